#pragma once

// layout -> schedule -> move cancellation -> unit-cost re-timing ->
// validation -> metrics, for one circuit and one configuration.

#include "lsc/circuit.hpp"
#include "lsc/layout.hpp"
#include "lsc/metrics.hpp"
#include "lsc/optimize.hpp"
#include "lsc/scheduler.hpp"
#include "lsc/validate.hpp"

#include <cmath>
#include <optional>

namespace lsc {

/// Smallest square data block holding `n_qubits`.
inline std::size_t side_for(std::size_t n_qubits) {
    std::size_t side = 1;
    while (side * side < n_qubits) ++side;
    return side;
}

/// Distillation period in ticks for a period given in d (must be a
/// multiple of d/2).
inline Tick period_ticks(double t_msf_d) {
    const double ticks = t_msf_d * 2.0;
    if (!(t_msf_d > 0) || std::abs(ticks - std::round(ticks)) > 1e-9) {
        throw InvalidArgument("factory period must be a positive multiple of 0.5 d");
    }
    return static_cast<Tick>(std::llround(ticks));
}

struct CompileOptions {
    std::optional<std::size_t> side;  // defaults to side_for(n_qubits)
    std::size_t routing_paths = 4;
    SchedulerConfig scheduler{};
    bool remove_redundant = true;
};

struct CompileResult {
    GridLayout layout;
    Schedule schedule;
    Schedule unit_schedule;
    ValidationReport report;
    ValidationReport unit_report;
    MetricsReport metrics;
};

inline CompileResult compile(const Circuit& c, const CompileOptions& opt) {
    check_circuit(c);
    const std::size_t side = opt.side.value_or(side_for(c.n_qubits));
    CompileResult out;
    out.layout = prepare_layout(build_layout(side, opt.routing_paths), c, opt.scheduler);

    SchedulerConfig exec_cfg = opt.scheduler;
    exec_cfg.unit_cost = false;

    out.schedule = schedule(c, out.layout, exec_cfg);
    if (opt.remove_redundant) out.schedule = remove_redundant_moves(std::move(out.schedule));
    // Unit-cost time: the same routing and op order, every op forced to 1d.
    out.unit_schedule = retime(out.schedule, exec_cfg.latency.as_unit_cost());
    out.report = validate_schedule(out.schedule);
    out.unit_report = validate_schedule(out.unit_schedule);
    out.metrics = compute_metrics(out.schedule, out.unit_schedule, out.layout, c, exec_cfg);
    return out;
}

}  // namespace lsc
