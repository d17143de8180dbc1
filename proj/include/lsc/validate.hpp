#pragma once

// Tick-ordered replay of a Schedule on a fresh copy of its initial
// occupancy. Every broken rule becomes a report entry; nothing throws.

#include "lsc/circuit.hpp"
#include "lsc/dag.hpp"
#include "lsc/layout.hpp"
#include "lsc/occupancy.hpp"
#include "lsc/schedule.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace lsc {

enum class ViolationKind { Exclusivity, Dependency, Placement, Movement, Conservation, Duration };

inline std::string_view violation_kind_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::Exclusivity: return "exclusivity";
        case ViolationKind::Dependency: return "dependency";
        case ViolationKind::Placement: return "placement";
        case ViolationKind::Movement: return "movement";
        case ViolationKind::Conservation: return "conservation";
        case ViolationKind::Duration: return "duration";
    }
    return "?";
}

struct Violation {
    ViolationKind kind;
    std::optional<std::size_t> op;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool clean() const noexcept { return violations.empty(); }
    std::size_t count(ViolationKind k) const {
        return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                      [k](const Violation& v) { return v.kind == k; }));
    }
};

namespace validate_detail {

class Replay {
public:
    Replay(const Schedule& s, ValidationReport& report)
        : s_(s), report_(report), occ_(s.initial), malformed_(s.ops.size(), 0), skip_(s.ops.size(), 0) {}

    void run() {
        check_shapes_and_durations();
        check_exclusivity();
        replay();
        check_dependencies();
    }

private:
    void add(ViolationKind k, std::optional<std::size_t> op, std::string msg) {
        report_.violations.push_back({k, op, std::move(msg)});
    }

    bool cells_ok(const ScheduledOp& op) const {
        for (Cell c : op.cells) {
            if (!occ_.in_bounds(c)) return false;
        }
        return true;
    }

    void check_shapes_and_durations() {
        const auto& lat = s_.latency;
        for (std::size_t i = 0; i < s_.ops.size(); ++i) {
            const auto& op = s_.ops[i];
            std::size_t want_cells = 0;
            Tick want = 0;
            switch (op.kind) {
                case OpKind::MoveHop: want_cells = 2; want = lat.move; break;
                case OpKind::Distill: want_cells = 0; want = lat.distill_period; break;
                case OpKind::MagicConsume: want_cells = 2; want = lat.t_consume; break;
                case OpKind::GateExec: {
                    if (!op.gate || *op.gate >= s_.circuit.gates.size()) {
                        add(ViolationKind::Placement, i, "gate op without a valid gate index");
                        malformed_[i] = 1;
                        continue;
                    }
                    const Gate& g = s_.circuit.gates[*op.gate];
                    want_cells = g.kind == GateKind::CNOT ? 3 : (g.kind == GateKind::H ? 2 : 1);
                    want = lat.gate_duration(g);
                    break;
                }
            }
            if (op.cells.size() != want_cells || !cells_ok(op)) {
                add(ViolationKind::Placement, i, "op has malformed cell list");
                malformed_[i] = 1;
                continue;
            }
            if (op.duration != want) {
                add(ViolationKind::Duration, i,
                    "duration " + std::to_string(op.duration) + " != expected " + std::to_string(want));
            }
        }
    }

    bool malformed(std::size_t i) const {
        return malformed_[i] != 0;
    }

    void check_exclusivity() {
        std::map<Cell, std::vector<std::size_t>> per_cell;
        for (std::size_t i = 0; i < s_.ops.size(); ++i) {
            if (malformed(i) || s_.ops[i].duration <= 0) continue;
            for (Cell c : s_.ops[i].cells) per_cell[c].push_back(i);
        }
        for (auto& [cell, ids] : per_cell) {
            std::stable_sort(ids.begin(), ids.end(),
                             [&](std::size_t a, std::size_t b) { return s_.ops[a].start < s_.ops[b].start; });
            for (std::size_t a = 0; a < ids.size(); ++a) {
                for (std::size_t b = a + 1; b < ids.size() && s_.ops[ids[b]].start < s_.ops[ids[a]].end(); ++b) {
                    add(ViolationKind::Exclusivity, ids[b],
                        "ops " + std::to_string(ids[a]) + " and " + std::to_string(ids[b]) + " overlap on " +
                            to_string(cell));
                }
            }
        }
    }

    void replay() {
        // (time, phase, op): at one tick, grid ops complete first, then
        // distillations deposit their states, then new ops start.
        std::vector<std::tuple<Tick, int, std::size_t>> events;
        for (std::size_t i = 0; i < s_.ops.size(); ++i) {
            if (malformed(i)) continue;
            events.emplace_back(s_.ops[i].start, 2, i);
            events.emplace_back(s_.ops[i].end(), s_.ops[i].kind == OpKind::Distill ? 1 : 0, i);
        }
        std::sort(events.begin(), events.end());
        exec_op_.assign(s_.circuit.gates.size(), std::nullopt);
        for (auto [t, phase, i] : events) {
            if (phase == 2) start(i);
            else complete(i);
        }
    }

    void start(std::size_t i) {
        const auto& op = s_.ops[i];
        switch (op.kind) {
            case OpKind::Distill: {
                if (!op.factory || *op.factory >= s_.layout.factory_ports.size()) {
                    add(ViolationKind::Conservation, i, "distillation on unknown factory");
                    skip_[i] = 1;
                } else if (!op.magic || produced_.count(*op.magic)) {
                    add(ViolationKind::Conservation, i, "distillation without a fresh magic state id");
                    skip_[i] = 1;
                } else {
                    produced_[*op.magic] = false;
                }
                break;
            }
            case OpKind::MoveHop: {
                const Cell from = op.cells[0];
                const Cell to = op.cells[1];
                if (!adjacent(from, to)) add(ViolationKind::Movement, i, "move between non-adjacent cells");
                if (occ_.at(from) != op.occupant) {
                    add(ViolationKind::Movement, i, to_string(op.occupant) + " is not at " + to_string(from));
                    skip_[i] = 1;
                } else if (!occ_.empty(to)) {
                    add(ViolationKind::Movement, i, "move into occupied cell " + to_string(to));
                    skip_[i] = 1;
                }
                break;
            }
            case OpKind::GateExec: {
                const std::size_t g = *op.gate;
                record_exec(g, i);
                const Gate& gate = s_.circuit.gates[g];
                if (needs_magic_state(gate)) {
                    add(ViolationKind::Conservation, i, "magic-state gate executed without consuming a state");
                    break;
                }
                check_gate_placement(i, gate);
                break;
            }
            case OpKind::MagicConsume: {
                if (!op.gate || *op.gate >= s_.circuit.gates.size() || !needs_magic_state(s_.circuit.gates[*op.gate])) {
                    add(ViolationKind::Conservation, i, "consumption attached to a gate that needs no magic state");
                    skip_[i] = 1;
                    break;
                }
                record_exec(*op.gate, i);
                auto it = op.magic ? produced_.find(*op.magic) : produced_.end();
                if (it == produced_.end()) {
                    add(ViolationKind::Conservation, i, "consumed magic state was never distilled");
                    skip_[i] = 1;
                    break;
                }
                if (it->second) {
                    add(ViolationKind::Conservation, i, "magic state consumed twice");
                    skip_[i] = 1;
                    break;
                }
                it->second = true;
                const Gate& gate = s_.circuit.gates[*op.gate];
                const Cell data = op.cells[0];
                const Cell landing = op.cells[1];
                if (occ_.at(data) != Occupant::data(gate.operands[0])) {
                    add(ViolationKind::Placement, i, "target qubit not at consumption cell");
                }
                if (occ_.at(landing) != Occupant::magic(*op.magic)) {
                    add(ViolationKind::Placement, i, "magic state not at landing cell");
                    skip_[i] = 1;
                } else if (!vertically_adjacent(data, landing)) {
                    add(ViolationKind::Placement, i, "magic state must land vertically next to the target");
                }
                break;
            }
        }
    }

    void record_exec(std::size_t g, std::size_t i) {
        if (exec_op_[g]) {
            add(ViolationKind::Dependency, i, "gate " + std::to_string(g) + " executed more than once");
            return;
        }
        exec_op_[g] = i;
    }

    void check_gate_placement(std::size_t i, const Gate& g) {
        const auto& op = s_.ops[i];
        auto holds = [&](Cell c, std::size_t q) { return occ_.at(c) == Occupant::data(q); };
        if (g.kind == GateKind::CNOT) {
            const Cell ctrl = op.cells[0], anc = op.cells[1], tgt = op.cells[2];
            if (!holds(ctrl, g.operands[0]) || !holds(tgt, g.operands[1])) {
                add(ViolationKind::Placement, i, "CNOT operands not at their cells");
            } else if (!occ_.empty(anc)) {
                add(ViolationKind::Placement, i, "CNOT ancilla cell is occupied");
            } else if (!vertically_adjacent(ctrl, anc) || !horizontally_adjacent(tgt, anc)) {
                add(ViolationKind::Placement, i, "CNOT needs ZZ merge vertical and XX merge horizontal");
            }
        } else if (g.kind == GateKind::H) {
            if (!holds(op.cells[0], g.operands[0])) {
                add(ViolationKind::Placement, i, "H operand not at its cell");
            } else if (!occ_.empty(op.cells[1]) || !adjacent(op.cells[0], op.cells[1])) {
                add(ViolationKind::Placement, i, "H needs one empty neighbouring ancilla");
            }
        } else if (!holds(op.cells[0], g.operands[0])) {
            add(ViolationKind::Placement, i, std::string(kind_name(g.kind)) + " operand not at its cell");
        }
    }

    void complete(std::size_t i) {
        if (skip_[i]) return;
        const auto& op = s_.ops[i];
        switch (op.kind) {
            case OpKind::MoveHop: occ_.move(op.cells[0], op.cells[1]); break;
            case OpKind::MagicConsume: occ_.remove(op.cells[1]); break;
            case OpKind::Distill: {
                const Cell port = s_.layout.factory_ports[*op.factory].cell;
                if (!occ_.empty(port)) {
                    add(ViolationKind::Movement, i, "factory port occupied when a state was produced");
                } else {
                    occ_.place(port, Occupant::magic(*op.magic));
                }
                break;
            }
            case OpKind::GateExec: break;
        }
    }

    void check_dependencies() {
        const DependencyGraph dag = build_dag(s_.circuit);
        for (std::size_t g = 0; g < exec_op_.size(); ++g) {
            if (exec_op_[g]) continue;
            if (needs_magic_state(s_.circuit.gates[g])) {
                add(ViolationKind::Conservation, std::nullopt, "gate " + std::to_string(g) + " never consumed a magic state");
            } else {
                add(ViolationKind::Dependency, std::nullopt, "gate " + std::to_string(g) + " never executed");
            }
        }
        for (auto [a, b] : dag.edges()) {
            if (!exec_op_[a] || !exec_op_[b]) continue;
            if (s_.ops[*exec_op_[a]].end() > s_.ops[*exec_op_[b]].start) {
                add(ViolationKind::Dependency, *exec_op_[b],
                    "gate " + std::to_string(b) + " starts before predecessor " + std::to_string(a) + " ends");
            }
        }
    }

    const Schedule& s_;
    ValidationReport& report_;
    OccupancyState occ_;
    std::map<std::size_t, bool> produced_;  // magic id -> consumed
    std::vector<std::optional<std::size_t>> exec_op_;
    std::vector<char> malformed_;
    std::vector<char> skip_;
};

}  // namespace validate_detail

inline ValidationReport validate_schedule(const Schedule& s) {
    ValidationReport report;
    validate_detail::Replay(s, report).run();
    return report;
}

}  // namespace lsc
