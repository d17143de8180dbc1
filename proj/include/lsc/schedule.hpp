#pragma once

#include "lsc/circuit.hpp"
#include "lsc/errors.hpp"
#include "lsc/layout.hpp"
#include "lsc/occupancy.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lsc {

/// Operation latencies in ticks; one tick is half a code cycle (d/2).
struct LatencyModel {
    Tick move = 2;
    Tick mzz = 2;
    Tick mxx = 2;
    Tick cnot = 4;
    Tick hadamard = 6;
    Tick s_like = 3;  // S, Sdg, SX
    Tick t_consume = 5;
    Tick pauli = 0;  // X, Z: tracked in the Pauli frame
    Tick distill_period = 22;
    bool unit_cost = false;

    /// Every lattice-surgery operation forced to one code cycle; Pauli frame
    /// updates stay free and factories keep their production period.
    LatencyModel as_unit_cost() const {
        LatencyModel u = *this;
        u.move = u.mzz = u.mxx = u.cnot = u.hadamard = u.s_like = u.t_consume = 2;
        u.unit_cost = true;
        return u;
    }

    void check() const {
        for (Tick t : {move, mzz, mxx, cnot, hadamard, s_like, t_consume, pauli}) {
            if (t < 0) throw InvalidArgument("latencies must be non-negative");
        }
        if (distill_period <= 0) throw InvalidArgument("distillation period must be positive");
        if (!unit_cost && t_consume != mzz + s_like) {
            throw InvalidArgument("T consumption must equal one ZZ merge plus one S");
        }
        if (distill_period < std::max(move, t_consume)) {
            throw InvalidArgument("distillation period shorter than a port departure");
        }
    }

    /// Duration of executing `g` (for magic-state gates: the consumption).
    Tick gate_duration(const Gate& g) const {
        if (needs_magic_state(g)) return t_consume;
        switch (g.kind) {
            case GateKind::H: return hadamard;
            case GateKind::CNOT: return cnot;
            case GateKind::X:
            case GateKind::Z: return pauli;
            case GateKind::S:
            case GateKind::Sdg:
            case GateKind::SX: return s_like;
            case GateKind::RZ: {
                // Clifford-angle rotation: Z-type Pauli or S-type phase.
                const int turns = clifford_quarter_turns(*g.angle).value_or(1);
                return turns == 0 ? 0 : (turns == 2 ? pauli : s_like);
            }
            default: return t_consume;
        }
    }

    friend bool operator==(const LatencyModel&, const LatencyModel&) = default;
};

enum class OpKind { GateExec, MoveHop, Distill, MagicConsume };

inline std::string_view op_kind_name(OpKind k) {
    switch (k) {
        case OpKind::GateExec: return "gate";
        case OpKind::MoveHop: return "move";
        case OpKind::Distill: return "distill";
        case OpKind::MagicConsume: return "consume";
    }
    return "?";
}

/// One timed operation. Cell conventions:
///   GateExec CNOT: {control, ancilla, target}; H: {data, ancilla};
///   other single-qubit gates: {data}.
///   MoveHop: {from, to}.  MagicConsume: {data, landing}.  Distill: {}.
struct ScheduledOp {
    OpKind kind = OpKind::GateExec;
    std::vector<Cell> cells;
    Tick start = 0;
    Tick duration = 0;
    std::optional<std::size_t> gate;
    Occupant occupant;
    std::optional<std::size_t> magic;
    std::optional<std::size_t> factory;

    Tick end() const noexcept { return start + duration; }

    friend bool operator==(const ScheduledOp&, const ScheduledOp&) = default;
};

struct Schedule {
    std::vector<ScheduledOp> ops;
    Tick makespan = 0;
    GridLayout layout;
    Circuit circuit;
    OccupancyState initial;
    LatencyModel latency;

    std::size_t count(OpKind k) const {
        return static_cast<std::size_t>(
            std::count_if(ops.begin(), ops.end(), [k](const ScheduledOp& op) { return op.kind == k; }));
    }

    void recompute_makespan() {
        makespan = 0;
        for (const auto& op : ops) makespan = std::max(makespan, op.end());
    }
};

inline void sort_ops(std::vector<ScheduledOp>& ops) {
    std::stable_sort(ops.begin(), ops.end(),
                     [](const ScheduledOp& a, const ScheduledOp& b) { return a.start < b.start; });
}

// ---- JSON lines -------------------------------------------------------------

inline nlohmann::json to_json(const ScheduledOp& op) {
    nlohmann::json cells = nlohmann::json::array();
    for (Cell c : op.cells) cells.push_back({c.row, c.col});
    nlohmann::json j{{"kind", op_kind_name(op.kind)},
                     {"cells", std::move(cells)},
                     {"start_tick", op.start},
                     {"duration_ticks", op.duration}};
    if (op.gate) j["gate_index"] = *op.gate;
    if (op.kind == OpKind::MoveHop) j["occupant"] = to_string(op.occupant);
    if (op.magic) j["magic_id"] = *op.magic;
    if (op.factory) j["factory"] = *op.factory;
    return j;
}

inline ScheduledOp op_from_json(const nlohmann::json& j) {
    ScheduledOp op;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "gate") op.kind = OpKind::GateExec;
    else if (kind == "move") op.kind = OpKind::MoveHop;
    else if (kind == "distill") op.kind = OpKind::Distill;
    else if (kind == "consume") op.kind = OpKind::MagicConsume;
    else throw InvalidArgument("unknown op kind '" + kind + "'");
    for (const auto& c : j.at("cells")) op.cells.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
    op.start = j.at("start_tick").get<Tick>();
    op.duration = j.at("duration_ticks").get<Tick>();
    if (j.contains("gate_index")) op.gate = j.at("gate_index").get<std::size_t>();
    if (j.contains("magic_id")) op.magic = j.at("magic_id").get<std::size_t>();
    if (j.contains("factory")) op.factory = j.at("factory").get<std::size_t>();
    if (j.contains("occupant")) {
        const auto s = j.at("occupant").get<std::string>();
        if (s.size() < 2 || (s[0] != 'q' && s[0] != 'm')) throw InvalidArgument("bad occupant '" + s + "'");
        const std::size_t id = std::stoul(s.substr(1));
        op.occupant = s[0] == 'q' ? Occupant::data(id) : Occupant::magic(id);
    }
    return op;
}

inline void write_jsonl(std::ostream& out, const Schedule& s) {
    for (const auto& op : s.ops) out << to_json(op).dump() << '\n';
}

inline std::vector<ScheduledOp> read_jsonl(std::istream& in) {
    std::vector<ScheduledOp> ops;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ops.push_back(op_from_json(nlohmann::json::parse(line)));
    }
    return ops;
}

}  // namespace lsc
