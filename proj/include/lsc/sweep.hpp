#pragma once

#include "lsc/benchgen.hpp"
#include "lsc/metrics.hpp"
#include "lsc/pipeline.hpp"
#include "lsc/svg.hpp"

#include <atomic>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace lsc {

/// Routing-path value standing for the largest legal count, 2L+2.
inline constexpr std::size_t r_max = 0;

inline std::size_t resolve_routing_paths(std::size_t r, std::size_t side) {
    return r == r_max ? max_routing_paths(side) : r;
}

struct SweepSpec {
    std::vector<LatticeSpec> benchmarks;
    std::vector<std::size_t> r_values;
    std::vector<std::size_t> n_msf_values;
    double t_msf_d = 11.0;
    bool include_factories = true;
    bool remove_redundant = true;
    std::size_t jobs = 1;
};

struct SweepRow {
    MetricsReport metrics;
    std::string error;

    bool ok() const noexcept { return error.empty(); }
};

inline void check_sweep(const SweepSpec& spec) {
    if (spec.benchmarks.empty() || spec.r_values.empty() || spec.n_msf_values.empty()) {
        throw InvalidArgument("sweep needs at least one benchmark, r value and factory count");
    }
    period_ticks(spec.t_msf_d);
    for (const auto& b : spec.benchmarks) {
        for (std::size_t r : spec.r_values) {
            const std::size_t rr = resolve_routing_paths(r, b.side);
            if (rr < 2 || rr > max_routing_paths(b.side)) {
                throw InvalidRoutingCount("r=" + std::to_string(rr) + " out of range for " + benchmark_name(b));
            }
        }
    }
}

inline SweepRow run_sweep_point(const Circuit& c, const LatticeSpec& b, std::size_t r, std::size_t n_msf,
                                const SweepSpec& spec) {
    SweepRow row;
    row.metrics.benchmark = c.name;
    row.metrics.side = b.side;
    row.metrics.r = r;
    row.metrics.n_msf = n_msf;
    row.metrics.t_msf_d = spec.t_msf_d;
    try {
        CompileOptions opt;
        opt.side = b.side;
        opt.routing_paths = r;
        opt.scheduler.n_factories = n_msf;
        opt.scheduler.latency.distill_period = period_ticks(spec.t_msf_d);
        opt.remove_redundant = spec.remove_redundant;
        CompileResult res = compile(c, opt);
        row.metrics = res.metrics;
        const std::size_t bad = res.report.violations.size() + res.unit_report.violations.size();
        if (bad) row.error = "validation: " + std::to_string(bad) + " violations";
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

/// Rows in (benchmark, r, n_MSF) order as listed in the spec, whatever the
/// number of workers.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    check_sweep(spec);
    std::vector<Circuit> circuits;
    for (const auto& b : spec.benchmarks) circuits.push_back(generate(b));

    struct Point {
        std::size_t bench, r, n;
    };
    std::vector<Point> points;
    for (std::size_t b = 0; b < spec.benchmarks.size(); ++b) {
        for (std::size_t r : spec.r_values) {
            for (std::size_t n : spec.n_msf_values) {
                points.push_back({b, resolve_routing_paths(r, spec.benchmarks[b].side), n});
            }
        }
    }
    std::vector<SweepRow> rows(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            const Point& p = points[i];
            rows[i] = run_sweep_point(circuits[p.bench], spec.benchmarks[p.bench], p.r, p.n, spec);
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(spec.jobs, points.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

inline void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << csv_header << '\n';
    for (const auto& row : rows) out << csv_row(row.metrics, row.error) << '\n';
}

/// Spacetime volume per gate against factory count, one series per
/// (benchmark, r).
inline Chart spacetime_chart(const std::vector<SweepRow>& rows, bool include_factories) {
    Chart chart;
    chart.title = include_factories ? "Spacetime volume per gate (incl. factories)" : "Spacetime volume per gate";
    chart.x_label = "distillation factories";
    chart.y_label = "spacetime per gate (qubits x d)";
    std::map<std::tuple<std::string, std::size_t>, std::size_t> index;
    for (const auto& row : rows) {
        if (!row.ok()) continue;
        const auto key = std::make_tuple(row.metrics.benchmark, row.metrics.r);
        auto [it, fresh] = index.emplace(key, chart.series.size());
        if (fresh) chart.series.push_back({row.metrics.benchmark + " r=" + std::to_string(row.metrics.r), {}});
        const double y = include_factories ? row.metrics.spacetime_incl_per_gate() : row.metrics.spacetime_excl_per_gate();
        chart.series[it->second].points.emplace_back(static_cast<double>(row.metrics.n_msf), y);
    }
    return chart;
}

/// Execution time against qubit count, one series per (benchmark, n_MSF).
inline Chart tradeoff_chart(const std::vector<SweepRow>& rows, bool include_factories) {
    Chart chart;
    chart.title = "Execution time vs qubits";
    chart.x_label = include_factories ? "qubits (incl. factories)" : "qubits";
    chart.y_label = "execution time (d)";
    chart.lines = false;
    std::map<std::tuple<std::string, std::size_t>, std::size_t> index;
    for (const auto& row : rows) {
        if (!row.ok()) continue;
        const auto key = std::make_tuple(row.metrics.benchmark, row.metrics.n_msf);
        auto [it, fresh] = index.emplace(key, chart.series.size());
        if (fresh) {
            chart.series.push_back({row.metrics.benchmark + " MSF=" + std::to_string(row.metrics.n_msf), {}});
        }
        const double x = static_cast<double>(include_factories ? row.metrics.qubits_incl : row.metrics.qubits_excl);
        chart.series[it->second].points.emplace_back(x, row.metrics.exec_time_d);
    }
    return chart;
}

}  // namespace lsc
