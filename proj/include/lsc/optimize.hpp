#pragma once

// Inverse move-pair cancellation followed by as-soon-as-possible
// re-timing of the surviving ops in their original order.

#include "lsc/dag.hpp"
#include "lsc/layout.hpp"
#include "lsc/schedule.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace lsc {

namespace optimize_detail {

// For every op and each of its cells, the next op on that cell in
// (start, index) order.
inline std::vector<std::vector<std::optional<std::size_t>>> successors_on_cells(const Schedule& s,
                                                                                const std::vector<char>& dropped) {
    std::vector<std::vector<std::size_t>> lists(s.layout.cell_count());
    std::vector<std::size_t> order(s.ops.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s.ops[a].start < s.ops[b].start; });
    for (std::size_t i : order) {
        if (dropped[i]) continue;
        for (Cell c : s.ops[i].cells) lists[s.layout.index(c)].push_back(i);
    }
    std::vector<std::vector<std::optional<std::size_t>>> next(s.ops.size());
    for (std::size_t i = 0; i < s.ops.size(); ++i) next[i].resize(s.ops[i].cells.size());
    for (const auto& list : lists) {
        for (std::size_t k = 0; k + 1 < list.size(); ++k) {
            const auto& cells = s.ops[list[k]].cells;
            for (std::size_t slot = 0; slot < cells.size(); ++slot) {
                if (&lists[s.layout.index(cells[slot])] == &list) next[list[k]][slot] = list[k + 1];
            }
        }
    }
    return next;
}

// Re-times ops in their current order: each op starts as soon as its cells,
// DAG predecessors, magic-state production and factory sequencing allow.
// A distillation is ordered by its completion, when its state appears on
// the port, and completes no earlier than the port is vacated.
inline void recompact(Schedule& s) {
    sort_ops(s.ops);
    const DependencyGraph dag = build_dag(s.circuit);
    const Tick period = s.latency.distill_period;
    const std::size_t n_factories = s.layout.factory_ports.size();

    std::vector<std::size_t> order(s.ops.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key = [&](std::size_t i) {
        const auto& op = s.ops[i];
        const bool distill = op.kind == OpKind::Distill;
        return std::make_tuple(distill ? op.end() : op.start, distill ? 0 : 1, i);
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

    std::vector<Tick> busy(s.layout.cell_count(), 0);
    std::vector<std::optional<Tick>> gate_end(s.circuit.gates.size());
    std::map<std::size_t, Tick> produced;  // magic id -> production tick
    std::map<std::size_t, Tick> departed;  // magic id -> first op start
    std::vector<std::optional<std::size_t>> last_state(n_factories);
    std::vector<Tick> factory_free(n_factories, 0);

    for (std::size_t i : order) {
        auto& op = s.ops[i];
        if (op.kind == OpKind::Distill) {
            if (!op.factory || *op.factory >= n_factories) continue;
            const std::size_t f = *op.factory;
            Tick end = factory_free[f] + period;
            if (last_state[f]) {
                if (auto it = departed.find(*last_state[f]); it != departed.end()) end = std::max(end, it->second + period);
            }
            end = std::max(end, busy[s.layout.index(s.layout.factory_ports[f].cell)]);
            op.start = end - op.duration;
            factory_free[f] = op.end();
            if (op.magic) {
                produced[*op.magic] = op.end();
                last_state[f] = *op.magic;
            }
            continue;
        }
        Tick start = 0;
        for (Cell c : op.cells) start = std::max(start, busy[s.layout.index(c)]);
        if (op.gate) {
            for (std::size_t p : dag.preds[*op.gate]) {
                if (gate_end[p]) start = std::max(start, *gate_end[p]);
            }
        }
        std::optional<std::size_t> magic;
        if (op.kind == OpKind::MagicConsume) magic = op.magic;
        if (op.kind == OpKind::MoveHop && op.occupant.is_magic()) magic = op.occupant.id;
        if (magic) {
            if (auto it = produced.find(*magic); it != produced.end()) start = std::max(start, it->second);
        }
        op.start = start;
        for (Cell c : op.cells) {
            Tick& b = busy[s.layout.index(c)];
            b = std::max(b, op.end());
        }
        if (op.gate && op.kind != OpKind::MoveHop) gate_end[*op.gate] = op.end();
        if (magic && !departed.count(*magic)) departed[*magic] = start;
    }
    sort_ops(s.ops);
    s.recompute_makespan();
}

}  // namespace optimize_detail

/// Cancels A->B / B->A move pairs of one occupant that are adjacent in the
/// op sequences of both cells, repeats until none remain, then re-times the
/// schedule.
inline Schedule remove_redundant_moves(Schedule s) {
    sort_ops(s.ops);
    std::vector<char> dropped(s.ops.size(), 0);
    // A magic state's first hop off its port fixes when the factory may
    // start the next distillation, so it is never cancelled.
    std::vector<char> departure(s.ops.size(), 0);
    std::map<std::size_t, bool> seen_state;
    for (std::size_t i = 0; i < s.ops.size(); ++i) {
        const auto& op = s.ops[i];
        std::optional<std::size_t> magic;
        if (op.kind == OpKind::MagicConsume) magic = op.magic;
        if (op.kind == OpKind::MoveHop && op.occupant.is_magic()) magic = op.occupant.id;
        if (magic && !seen_state[*magic]) {
            seen_state[*magic] = true;
            departure[i] = 1;
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        const auto next = optimize_detail::successors_on_cells(s, dropped);
        for (std::size_t i = 0; i < s.ops.size(); ++i) {
            const auto& a = s.ops[i];
            if (dropped[i] || a.kind != OpKind::MoveHop || a.cells.size() != 2) continue;
            if (departure[i]) continue;
            const Cell from = a.cells[0], to = a.cells[1];
            const auto j = next[i][1];
            if (!j || dropped[*j] || next[i][0] != j) continue;
            const auto& b = s.ops[*j];
            if (b.kind != OpKind::MoveHop || b.occupant != a.occupant || b.cells.size() != 2 || b.cells[0] != to ||
                b.cells[1] != from) {
                continue;
            }
            dropped[i] = dropped[*j] = 1;
            changed = true;
        }
    }
    std::vector<ScheduledOp> kept;
    kept.reserve(s.ops.size());
    for (std::size_t i = 0; i < s.ops.size(); ++i) {
        if (!dropped[i]) kept.push_back(std::move(s.ops[i]));
    }
    s.ops = std::move(kept);
    optimize_detail::recompact(s);
    return s;
}

/// Same ops in the same order with durations taken from `lat`, started as
/// early as the constraints allow. With durations no longer than before, no
/// op starts later.
inline Schedule retime(Schedule s, const LatencyModel& lat) {
    for (auto& op : s.ops) {
        switch (op.kind) {
            case OpKind::MoveHop: op.duration = lat.move; break;
            case OpKind::Distill: op.duration = lat.distill_period; break;
            case OpKind::MagicConsume: op.duration = lat.t_consume; break;
            case OpKind::GateExec: op.duration = lat.gate_duration(s.circuit.gates.at(*op.gate)); break;
        }
    }
    s.latency = lat;
    optimize_detail::recompact(s);
    return s;
}

}  // namespace lsc
