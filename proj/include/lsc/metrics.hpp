#pragma once

#include "lsc/circuit.hpp"
#include "lsc/errors.hpp"
#include "lsc/layout.hpp"
#include "lsc/schedule.hpp"
#include "lsc/scheduler.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace lsc {

/// Distillation-limited execution time n_T * t_MSF / n_MSF, in d.
inline double lower_bound(std::size_t n_t, double t_msf_d, std::size_t n_msf) {
    if (n_msf == 0) throw InvalidArgument("lower bound needs at least one factory");
    if (!(t_msf_d > 0) || !std::isfinite(t_msf_d)) throw InvalidArgument("factory period must be positive");
    return static_cast<double>(n_t) * t_msf_d / static_cast<double>(n_msf);
}

inline double ticks_to_d(Tick t) { return static_cast<double>(t) / 2.0; }

struct MetricsReport {
    std::string benchmark;
    std::size_t side = 0;
    std::size_t r = 0;
    std::size_t n_msf = 0;
    double t_msf_d = 0;
    std::size_t n_t = 0;
    std::size_t gate_count = 0;
    std::size_t move_count = 0;
    std::size_t qubits_excl = 0;
    std::size_t qubits_incl = 0;
    double exec_time_d = 0;
    double unit_cost_time_d = 0;
    double lower_bound_d = 0;
    double spacetime_excl = 0;
    double spacetime_incl = 0;
    double cpi_d = 0;

    double spacetime_excl_per_gate() const { return gate_count ? spacetime_excl / gate_count : 0.0; }
    double spacetime_incl_per_gate() const { return gate_count ? spacetime_incl / gate_count : 0.0; }
};

inline MetricsReport compute_metrics(const Schedule& s, const Schedule& s_unit, const GridLayout& g, const Circuit& c,
                                     const SchedulerConfig& cfg) {
    auto same_circuit = [&](const Circuit& other) {
        return other.n_qubits == c.n_qubits && other.gates.size() == c.gates.size();
    };
    if (!same_circuit(s.circuit) || !same_circuit(s_unit.circuit)) {
        throw MismatchedInputs("schedules were built for a different circuit");
    }
    for (const Schedule* x : {&s, &s_unit}) {
        if (x->layout.rows != g.rows || x->layout.cols != g.cols ||
            x->layout.factory_ports.size() != g.factory_ports.size()) {
            throw MismatchedInputs("schedules were built for a different layout");
        }
    }
    if (g.factory_ports.size() != cfg.n_factories) throw MismatchedInputs("factory count differs from config");

    MetricsReport m;
    m.benchmark = c.name;
    m.side = g.side;
    m.r = g.routing_paths;
    m.n_msf = cfg.n_factories;
    m.t_msf_d = ticks_to_d(cfg.latency.distill_period);
    m.n_t = count_t_states(c);
    m.gate_count = c.gates.size();
    m.move_count = s.count(OpKind::MoveHop);
    m.qubits_excl = total_qubits(g, false);
    m.qubits_incl = total_qubits(g, true);
    m.exec_time_d = ticks_to_d(s.makespan);
    m.unit_cost_time_d = ticks_to_d(s_unit.makespan);
    m.lower_bound_d = m.n_msf ? lower_bound(m.n_t, m.t_msf_d, m.n_msf) : 0.0;
    m.spacetime_excl = static_cast<double>(m.qubits_excl) * m.exec_time_d;
    m.spacetime_incl = static_cast<double>(m.qubits_incl) * m.exec_time_d;
    m.cpi_d = m.gate_count ? m.exec_time_d / static_cast<double>(m.gate_count) : 0.0;
    return m;
}

/// Shortest round-trip decimal form.
inline std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return ec == std::errc{} ? std::string(buf.data(), end) : std::string("nan");
}

inline nlohmann::json to_json(const MetricsReport& m) {
    return {{"benchmark", m.benchmark},
            {"L", m.side},
            {"r", m.r},
            {"n_MSF", m.n_msf},
            {"t_MSF_d", m.t_msf_d},
            {"n_T", m.n_t},
            {"gate_count", m.gate_count},
            {"move_count", m.move_count},
            {"qubits_excl", m.qubits_excl},
            {"qubits_incl", m.qubits_incl},
            {"exec_time_d", m.exec_time_d},
            {"unit_cost_time_d", m.unit_cost_time_d},
            {"lower_bound_d", m.lower_bound_d},
            {"spacetime_excl", m.spacetime_excl},
            {"spacetime_incl", m.spacetime_incl},
            {"spacetime_excl_per_gate", m.spacetime_excl_per_gate()},
            {"spacetime_incl_per_gate", m.spacetime_incl_per_gate()},
            {"cpi_d", m.cpi_d}};
}

inline constexpr std::string_view csv_header =
    "benchmark,L,r,n_MSF,t_MSF_d,qubits_excl,qubits_incl,exec_time_d,unit_cost_time_d,lower_bound_d,"
    "spacetime_excl,spacetime_incl,cpi_d,error";

/// One CSV row. A non-empty `error` marks a failed sweep point; metric
/// columns are then left blank.
inline std::string csv_row(const MetricsReport& m, const std::string& error = {}) {
    std::string row = m.benchmark + "," + std::to_string(m.side) + "," + std::to_string(m.r) + "," +
                      std::to_string(m.n_msf) + "," + format_number(m.t_msf_d) + ",";
    if (error.empty()) {
        row += std::to_string(m.qubits_excl) + "," + std::to_string(m.qubits_incl) + "," + format_number(m.exec_time_d) +
               "," + format_number(m.unit_cost_time_d) + "," + format_number(m.lower_bound_d) + "," +
               format_number(m.spacetime_excl) + "," + format_number(m.spacetime_incl) + "," + format_number(m.cpi_d) +
               ",";
    } else {
        std::string clean = error;
        std::replace(clean.begin(), clean.end(), ',', ';');
        std::replace(clean.begin(), clean.end(), '\n', ' ');
        row += ",,,,,,,," + clean;
    }
    return row;
}

// ---- analytic block baselines ----------------------------------------------

enum class BlockKind { Compact, Intermediate, Fast };

inline std::string_view block_kind_name(BlockKind k) {
    switch (k) {
        case BlockKind::Compact: return "compact";
        case BlockKind::Intermediate: return "intermediate";
        case BlockKind::Fast: return "fast";
    }
    return "?";
}

struct BlockBaseline {
    BlockKind kind = BlockKind::Compact;
    std::size_t n = 0;
    std::size_t qubits = 0;
    double ppr_depth_d = 0;
    double time_d = 0;
    double spacetime = 0;
};

inline std::size_t block_qubits(BlockKind k, std::size_t n) {
    switch (k) {
        case BlockKind::Compact: return 3 * n + 3;
        case BlockKind::Intermediate: return 4 * n;
        case BlockKind::Fast: return 4 * n + 6;
    }
    return 0;
}

inline double block_ppr_depth_d(BlockKind k) { return k == BlockKind::Compact ? 4.0 : 3.0; }

/// Block layout running one rotation per magic state, serially, and never
/// faster than the factories allow.
inline BlockBaseline baseline_block(BlockKind kind, std::size_t n, std::size_t n_t, std::size_t n_msf, double t_msf_d) {
    if (n == 0) throw InvalidArgument("baseline needs at least one data qubit");
    BlockBaseline b;
    b.kind = kind;
    b.n = n;
    b.qubits = block_qubits(kind, n);
    b.ppr_depth_d = block_ppr_depth_d(kind);
    b.time_d = std::max(lower_bound(n_t, t_msf_d, n_msf), static_cast<double>(n_t) * b.ppr_depth_d);
    b.spacetime = static_cast<double>(b.qubits) * b.time_d;
    return b;
}

inline nlohmann::json to_json(const BlockBaseline& b) {
    return {{"kind", block_kind_name(b.kind)}, {"n", b.n},           {"qubits", b.qubits},
            {"ppr_depth_d", b.ppr_depth_d},    {"time_d", b.time_d}, {"spacetime", b.spacetime}};
}

}  // namespace lsc
