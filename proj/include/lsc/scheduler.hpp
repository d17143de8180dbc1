#pragma once

// Resource-constrained list scheduling of a circuit onto a lattice-surgery
// grid.
//
// Gates are dispatched in (DAG depth, program index) order. Each gate is
// planned against the committed occupancy (the state after every op placed
// so far) and its ops are then timed as early as the per-cell reservation
// horizons, the DAG and magic-state production allow. Because every op on
// a cell starts after all previously placed ops on that cell, the per-cell
// op sequences match planning order and the schedule replays cleanly.

#include "lsc/circuit.hpp"
#include "lsc/dag.hpp"
#include "lsc/errors.hpp"
#include "lsc/layout.hpp"
#include "lsc/occupancy.hpp"
#include "lsc/router.hpp"
#include "lsc/schedule.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace lsc {

struct SchedulerConfig {
    std::size_t n_factories = 1;
    LatencyModel latency{};
    bool unit_cost = false;
    std::int64_t penalty = default_penalty;
    MappingMode mapping = MappingMode::Grid2D;
    /// State budget of the exhaustive fallback search used when greedy
    /// placement gets stuck.
    std::size_t fallback_state_limit = 200000;
    /// Also schedule with only n/2, n/4, ... of the factories supplying
    /// states (the rest idle, their ports usable as bus) and keep the
    /// shortest result.
    bool try_idle_factories = true;

    LatencyModel effective_latency() const { return unit_cost ? latency.as_unit_cost() : latency; }
};

struct PlannedMove {
    Cell from;
    Cell to;
    Occupant who;

    friend bool operator==(const PlannedMove&, const PlannedMove&) = default;
};

/// Target configuration of one gate plus the single-hop moves that reach
/// it, in execution order. For magic-state gates the moves include the
/// state's route (occupant kind Magic) and `factory`/`landing` are set.
struct PlacementPlan {
    std::vector<Cell> exec_cells;
    std::vector<PlannedMove> moves;
    std::optional<std::size_t> factory;
    std::optional<Cell> landing;

    std::size_t hops() const noexcept { return moves.size(); }
};

namespace sched_detail {

inline constexpr std::size_t scratch_magic_id = std::numeric_limits<std::size_t>::max();

// Records single-hop moves while mutating a scratch occupancy.
class MoveRecorder {
public:
    MoveRecorder(OccupancyState occ, const CellSet& ports, std::int64_t penalty)
        : occ_(std::move(occ)), ports_(ports), penalty_(penalty) {}

    OccupancyState& occ() { return occ_; }
    std::vector<PlannedMove>& moves() { return moves_; }

    void apply(Cell from, Cell to) {
        moves_.push_back({from, to, occ_.at(from)});
        occ_.move(from, to);
    }

    CellSet mask(std::initializer_list<Cell> cells) const {
        CellSet s = ports_;
        for (Cell c : cells) s.insert(c);
        return s;
    }

    /// Empties `cell` by a chain shift towards the nearest empty cell.
    bool clear(Cell cell, const CellSet& protect) {
        if (occ_.empty(cell)) return true;
        auto chain = clearing_moves(occ_, cell, protect, penalty_);
        if (!chain) return false;
        for (const Move& m : *chain) apply(m.from, m.to);
        return true;
    }

    /// Walks the occupant of `from` to `to`, shifting data qubits out of
    /// the way one cell at a time. `protect` (which includes the ports) is
    /// never disturbed; a data mover may cross a port when no other way
    /// exists, but chains never push anything onto one.
    bool route(Cell from, Cell to, const CellSet& protect, const CellSet* transit = nullptr) {
        Cell cur = from;
        const std::size_t cap = 4 * static_cast<std::size_t>(occ_.rows()) * occ_.cols();
        for (std::size_t iter = 0; cur != to; ++iter) {
            if (iter > cap) return false;
            std::optional<Path> path;
            for (const CellSet* mask : {&protect, transit}) {
                if (!mask || path) continue;
                try {
                    path = find_path(occ_, cur, to, *mask, penalty_);
                } catch (const NoPath&) {
                }
            }
            if (!path) return false;
            const Cell next = path->cells[1];
            if (occ_.empty(next)) {
                apply(cur, next);
                cur = next;
                continue;
            }
            CellSet chain_protect = protect;
            for (Cell c : path->cells) chain_protect.insert(c);
            if (ports_.contains(from)) chain_protect.insert(from);
            auto chain = clearing_moves(occ_, next, chain_protect, penalty_);
            if (!chain) {
                CellSet loose = protect;
                loose.insert(cur);
                if (ports_.contains(from)) loose.insert(from);
                chain = clearing_moves(occ_, next, loose, penalty_);
            }
            if (!chain) return false;
            for (const Move& m : *chain) apply(m.from, m.to);
        }
        return true;
    }

    /// `cells` alone, without the ports.
    CellSet only(std::initializer_list<Cell> cells) const {
        CellSet s(occ_.rows(), occ_.cols());
        for (Cell c : cells) s.insert(c);
        return s;
    }

private:
    OccupancyState occ_;
    const CellSet& ports_;
    std::int64_t penalty_;
    std::vector<PlannedMove> moves_;
};

// Exhaustive breadth-first search over sliding moves, treating non-designated
// data qubits as interchangeable blockers. Used only when greedy planning
// fails; bounded by a state budget.
class SlidingSearch {
public:
    struct Token {
        Cell cell;
        bool magic = false;
        std::optional<Cell> home = std::nullopt;  // a magic token may sit on its own port
    };
    using Goal = std::function<bool(const std::vector<Cell>& tokens, const std::function<bool(Cell)>& is_free)>;

    SlidingSearch(const OccupancyState& occ, const CellSet& ports, std::size_t limit)
        : occ_(occ), ports_(ports), limit_(limit) {}

    std::optional<std::vector<Move>> solve(const std::vector<Token>& tokens, const Goal& goal) const {
        const int rows = occ_.rows(), cols = occ_.cols();
        const std::size_t n = static_cast<std::size_t>(rows) * cols;
        // State encoding: per cell '.', 'b' (blocker) or token digit.
        std::string start(n, '.');
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                if (occ_.holds_data({r, c})) start[occ_.index({r, c})] = 'b';
                else if (occ_.at({r, c}).is_magic()) start[occ_.index({r, c})] = '#';
            }
        }
        for (std::size_t k = 0; k < tokens.size(); ++k) start[occ_.index(tokens[k].cell)] = static_cast<char>('0' + k);

        auto decode = [&](const std::string& s) {
            std::vector<Cell> pos(tokens.size());
            for (std::size_t i = 0; i < n; ++i) {
                if (s[i] >= '0' && s[i] <= '9') pos[s[i] - '0'] = occ_.cell_at_index(i);
            }
            return pos;
        };
        std::vector<std::size_t> port_cells;
        for (std::size_t i = 0; i < n; ++i) {
            if (ports_.contains(occ_.cell_at_index(i))) port_cells.push_back(i);
        }
        // Data may pass through ports but must not be left on one.
        auto goal_met = [&](const std::string& s) {
            for (std::size_t i : port_cells) {
                const char who = s[i];
                if (who == 'b' || (who >= '0' && who <= '9' && !tokens[who - '0'].magic)) return false;
            }
            auto is_free = [&](Cell c) { return occ_.in_bounds(c) && s[occ_.index(c)] == '.' && !ports_.contains(c); };
            return goal(decode(s), is_free);
        };

        std::unordered_map<std::string, std::pair<std::string, Move>> parent;
        std::deque<std::string> queue{start};
        parent.emplace(start, std::pair{std::string{}, Move{}});
        while (!queue.empty()) {
            std::string s = std::move(queue.front());
            queue.pop_front();
            if (goal_met(s)) return unwind(parent, s);
            for (std::size_t h = 0; h < n; ++h) {
                if (s[h] != '.') continue;
                const Cell hole = occ_.cell_at_index(h);
                for (Cell off : neighbour_offsets) {
                    const Cell src{hole.row + off.row, hole.col + off.col};
                    if (!occ_.in_bounds(src)) continue;
                    const char who = s[occ_.index(src)];
                    if (who == '.' || who == '#') continue;
                    const bool is_magic = who >= '0' && who <= '9' && tokens[who - '0'].magic;
                    if (ports_.contains(hole) && is_magic && tokens[who - '0'].home != hole) continue;
                    std::string t = s;
                    t[h] = who;
                    t[occ_.index(src)] = '.';
                    if (parent.count(t)) continue;
                    if (parent.size() >= limit_) return std::nullopt;
                    parent.emplace(t, std::pair{s, Move{src, hole}});
                    queue.push_back(std::move(t));
                }
            }
        }
        return std::nullopt;
    }

private:
    static std::vector<Move> unwind(const std::unordered_map<std::string, std::pair<std::string, Move>>& parent,
                                    std::string s) {
        std::vector<Move> out;
        for (;;) {
            const auto& [prev, mv] = parent.at(s);
            if (prev.empty()) break;
            out.push_back(mv);
            s = prev;
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    const OccupancyState& occ_;
    const CellSet& ports_;
    std::size_t limit_;
};

}  // namespace sched_detail

/// Computes placement plans for individual gates. Without a timing
/// estimator candidates are ranked purely by hop count.
class GatePlanner {
public:
    using Estimator = std::function<Tick(const PlacementPlan&)>;

    /// `active` restricts magic-state supply to a subset of the layout's
    /// factories; the ports of the others are treated as plain bus cells.
    GatePlanner(const Circuit& c, const DependencyGraph& dag, const GridLayout& g, std::int64_t penalty = default_penalty,
                std::size_t fallback_limit = 200000, std::optional<std::vector<FactoryPort>> active = std::nullopt)
        : circuit_(c), dag_(dag), layout_(g), penalty_(penalty), fallback_limit_(fallback_limit),
          active_(active ? std::move(*active) : g.factory_ports), ports_(g.rows, g.cols) {
        for (const auto& p : active_) ports_.insert(p.cell);
    }

    const CellSet& ports() const noexcept { return ports_; }

    PlacementPlan plan(std::size_t gate, const OccupancyState& occ, const Estimator& estimate = {}) const {
        const Gate& g = circuit_.gates.at(gate);
        if (needs_magic_state(g)) return plan_magic(gate, occ, estimate);
        if (g.kind == GateKind::CNOT) return plan_cnot(gate, occ, estimate);
        if (g.kind == GateKind::H) return plan_hadamard(gate, occ);
        return PlacementPlan{{occ.position(g.operands[0])}, {}, std::nullopt, std::nullopt};
    }

private:
    bool usable(Cell c) const { return layout_.in_bounds(c) && !ports_.contains(c); }

    // Manhattan distance from each operand's planned cell to its next
    // two-qubit partner in the DAG.
    int lookahead(std::size_t gate, const OccupancyState& after) const {
        int total = 0;
        for (std::size_t q : circuit_.gates[gate].operands) {
            std::optional<std::size_t> next;
            for (std::size_t s : dag_.succs[gate]) {
                const auto& ops = circuit_.gates[s].operands;
                if (std::find(ops.begin(), ops.end(), q) != ops.end() && (!next || s < *next)) next = s;
            }
            if (!next || !circuit_.gates[*next].is_two_qubit()) continue;
            const auto& ops = circuit_.gates[*next].operands;
            const std::size_t partner = ops[0] == q ? ops[1] : ops[0];
            if (auto pp = after.data_position(partner)) total += manhattan(after.position(q), *pp);
        }
        return total;
    }

    PlacementPlan plan_hadamard(std::size_t gate, const OccupancyState& occ) const {
        const std::size_t q = circuit_.gates[gate].operands[0];
        const Cell at = occ.position(q);
        try {
            auto found = space_search(occ, at, AdjacencyRequirement::AnyNeighbour, ports_, penalty_);
            PlacementPlan p;
            p.exec_cells = {at, found.ancilla};
            OccupancyState scratch = occ;
            for (const Move& m : found.clearing_moves) {
                p.moves.push_back({m.from, m.to, scratch.at(m.from)});
                scratch.move(m.from, m.to);
            }
            return p;
        } catch (const NoSpace&) {
        }
        sched_detail::SlidingSearch search(occ, ports_, fallback_limit_);
        auto goal = [&](const std::vector<Cell>& t, const std::function<bool(Cell)>& is_free) {
            for (Cell off : neighbour_offsets) {
                if (is_free({t[0].row + off.row, t[0].col + off.col})) return true;
            }
            return false;
        };
        auto moves = search.solve({{at, false, std::nullopt}}, goal);
        if (!moves) throw Unplaceable("no ancilla can be freed for H on q" + std::to_string(q));
        PlacementPlan p = from_moves(occ, *moves);
        const Cell now = p.moves.empty() ? at : final_position(p, at);
        OccupancyState scratch = replay(occ, p);
        for (Cell off : neighbour_offsets) {
            const Cell nb{now.row + off.row, now.col + off.col};
            if (usable(nb) && scratch.empty(nb)) {
                p.exec_cells = {now, nb};
                break;
            }
        }
        return p;
    }

    struct CnotCandidate {
        Cell control, ancilla, target;
        bool move_target;
    };

    PlacementPlan plan_cnot(std::size_t gate, const OccupancyState& occ, const Estimator& estimate) const {
        const Gate& g = circuit_.gates[gate];
        const std::size_t cq = g.operands[0], tq = g.operands[1];
        const Cell pc = occ.position(cq), pt = occ.position(tq);

        std::vector<CnotCandidate> cands;
        for (int dr : {-1, 1}) {
            for (int dc : {-1, 1}) {
                const Cell a{pc.row + dr, pc.col};
                cands.push_back({pc, a, {a.row, a.col + dc}, true});
            }
        }
        for (int dc : {-1, 1}) {
            for (int dr : {-1, 1}) {
                const Cell a{pt.row, pt.col + dc};
                cands.push_back({{a.row + dr, a.col}, a, pt, false});
            }
        }

        using Key = std::tuple<std::size_t, int, Tick, Cell, Cell, Cell>;
        std::optional<std::pair<Key, PlacementPlan>> best;
        for (const auto& cand : cands) {
            if (!usable(cand.control) || !usable(cand.ancilla) || !usable(cand.target)) continue;
            sched_detail::MoveRecorder rec(occ, ports_, penalty_);
            const Cell fixed = cand.move_target ? cand.control : cand.target;
            const Cell dest = cand.move_target ? cand.target : cand.control;
            const Cell from = cand.move_target ? pt : pc;
            const CellSet transit = rec.only({fixed});
            if (from != dest && !rec.route(from, dest, rec.mask({fixed}), &transit)) continue;
            if (!rec.clear(cand.ancilla, rec.mask({cand.control, cand.target}))) continue;
            PlacementPlan p{{cand.control, cand.ancilla, cand.target}, std::move(rec.moves()), std::nullopt, std::nullopt};
            const Tick start = estimate ? estimate(p) : 0;
            Key key{p.hops(), lookahead(gate, rec.occ()), start, cand.control, cand.ancilla, cand.target};
            if (!best || key < best->first) best.emplace(key, std::move(p));
        }
        if (best) return std::move(best->second);
        return cnot_fallback(gate, occ);
    }

    PlacementPlan cnot_fallback(std::size_t gate, const OccupancyState& occ) const {
        const Gate& g = circuit_.gates[gate];
        const Cell pc = occ.position(g.operands[0]), pt = occ.position(g.operands[1]);
        sched_detail::SlidingSearch search(occ, ports_, fallback_limit_);
        auto goal = [&](const std::vector<Cell>& t, const std::function<bool(Cell)>& is_free) {
            const Cell c = t[0], tg = t[1];
            if (std::abs(c.row - tg.row) != 1 || std::abs(c.col - tg.col) != 1) return false;
            return is_free({tg.row, c.col});
        };
        auto moves = search.solve({{pc, false, std::nullopt}, {pt, false, std::nullopt}}, goal);
        if (!moves) {
            throw Unplaceable("CNOT q" + std::to_string(g.operands[0]) + ",q" + std::to_string(g.operands[1]) +
                              " cannot reach a diagonal configuration");
        }
        PlacementPlan p = from_moves(occ, *moves);
        OccupancyState after = replay(occ, p);
        const Cell c = after.position(g.operands[0]), t = after.position(g.operands[1]);
        p.exec_cells = {c, {t.row, c.col}, t};
        return p;
    }

    PlacementPlan plan_magic(std::size_t gate, const OccupancyState& occ, const Estimator& estimate) const {
        const std::size_t q = circuit_.gates[gate].operands[0];
        const Cell at = occ.position(q);
        if (active_.empty()) {
            auto found = space_search(occ, at, AdjacencyRequirement::VerticalNeighbour, ports_, penalty_);
            PlacementPlan p;
            p.exec_cells = {at, found.ancilla};
            p.landing = found.ancilla;
            OccupancyState scratch = occ;
            for (const Move& m : found.clearing_moves) {
                p.moves.push_back({m.from, m.to, scratch.at(m.from)});
                scratch.move(m.from, m.to);
            }
            return p;
        }

        using Key = std::tuple<Tick, std::size_t, std::size_t, Cell>;
        std::optional<std::pair<Key, PlacementPlan>> best;
        for (const auto& port : active_) {
            for (int dr : {-1, 1}) {
                const Cell landing{at.row + dr, at.col};
                if (!layout_.in_bounds(landing)) continue;
                if (ports_.contains(landing) && landing != port.cell) continue;
                sched_detail::MoveRecorder rec(occ, ports_, penalty_);
                if (landing != port.cell && !rec.clear(landing, rec.mask({at}))) continue;
                rec.occ().place(port.cell, Occupant::magic(sched_detail::scratch_magic_id));
                if (landing != port.cell) {
                    CellSet protect = rec.mask({at});
                    protect.erase(port.cell);
                    if (!rec.route(port.cell, landing, protect)) continue;
                }
                PlacementPlan p{{at, landing}, std::move(rec.moves()), port.factory, landing};
                const Tick start = estimate ? estimate(p) : 0;
                Key key{start, p.hops(), port.factory, landing};
                if (!best || key < best->first) best.emplace(key, std::move(p));
            }
        }
        if (best) return std::move(best->second);
        return magic_fallback(gate, occ, estimate);
    }

    PlacementPlan magic_fallback(std::size_t gate, const OccupancyState& occ, const Estimator& estimate) const {
        const std::size_t q = circuit_.gates[gate].operands[0];
        const Cell at = occ.position(q);
        std::optional<std::pair<std::pair<Tick, std::size_t>, PlacementPlan>> best;
        for (const auto& port : active_) {
            OccupancyState with_state = occ;
            with_state.place(port.cell, Occupant::magic(sched_detail::scratch_magic_id));
            CellSet blocked = ports_;
            sched_detail::SlidingSearch search(with_state, blocked, fallback_limit_);
            auto goal = [](const std::vector<Cell>& t, const std::function<bool(Cell)>&) {
                return vertically_adjacent(t[0], t[1]);
            };
            auto moves = search.solve({{at, false, std::nullopt}, {port.cell, true, port.cell}}, goal);
            if (!moves) continue;
            PlacementPlan p = from_moves(with_state, *moves);
            OccupancyState after = replay(with_state, p);
            const Cell data = after.position(q);
            Cell landing = port.cell;
            for (int dr : {-1, 1}) {
                const Cell c{data.row + dr, data.col};
                if (after.in_bounds(c) && after.at(c).is_magic()) landing = c;
            }
            p.exec_cells = {data, landing};
            p.factory = port.factory;
            p.landing = landing;
            const Tick start = estimate ? estimate(p) : 0;
            std::pair key{start, p.hops()};
            if (!best || key < best->first) best.emplace(key, std::move(p));
        }
        if (!best) throw Unplaceable("no magic state can reach q" + std::to_string(q));
        return std::move(best->second);
    }

    static PlacementPlan from_moves(const OccupancyState& occ, const std::vector<Move>& moves) {
        PlacementPlan p;
        OccupancyState scratch = occ;
        for (const Move& m : moves) {
            p.moves.push_back({m.from, m.to, scratch.at(m.from)});
            scratch.move(m.from, m.to);
        }
        return p;
    }

    static OccupancyState replay(OccupancyState occ, const PlacementPlan& p) {
        for (const auto& m : p.moves) occ.move(m.from, m.to);
        return occ;
    }

    static Cell final_position(const PlacementPlan& p, Cell start) {
        Occupant who;
        bool tracking = false;
        Cell cur = start;
        for (const auto& m : p.moves) {
            if (m.from == cur && (!tracking || m.who == who)) {
                who = m.who;
                tracking = true;
                cur = m.to;
            }
        }
        return cur;
    }

    const Circuit& circuit_;
    const DependencyGraph& dag_;
    const GridLayout& layout_;
    std::int64_t penalty_;
    std::size_t fallback_limit_;
    std::vector<FactoryPort> active_;
    CellSet ports_;
};

/// Greedy placement plan for `gate` against occupancy `occ` (hop count
/// first, then look-ahead to the operands' next partners).
inline PlacementPlan plan_gate_placement(const Circuit& c, std::size_t gate, const OccupancyState& occ,
                                         const DependencyGraph& dag, const GridLayout& g,
                                         std::int64_t penalty = default_penalty) {
    return GatePlanner(c, dag, g, penalty).plan(gate, occ);
}

namespace sched_detail {

class ListScheduler {
public:
    ListScheduler(const Circuit& c, const GridLayout& g, const SchedulerConfig& cfg, OccupancyState initial,
                  std::vector<FactoryPort> active)
        : circuit_(c), layout_(g), cfg_(cfg), lat_(cfg.effective_latency()), dag_(build_dag(c)),
          planner_(circuit_, dag_, layout_, cfg.penalty, cfg.fallback_state_limit, std::move(active)), occ_(initial),
          busy_(g.cell_count(), 0), gate_end_(c.gates.size(), 0), factory_next_(g.factory_ports.size(), 0) {
        result_.layout = g;
        result_.circuit = c;
        result_.initial = std::move(initial);
        result_.latency = lat_;
    }

    Schedule run() {
        for (std::size_t gate : dag_.dispatch_order()) {
            PlacementPlan plan;
            try {
                plan = planner_.plan(gate, occ_, [&](const PlacementPlan& p) { return estimate(gate, p); });
            } catch (const Unplaceable& e) {
                throw SchedulingDeadlock("stuck at gate " + std::to_string(gate) + ": " + e.what() + "\n" +
                                         render_occupancy(occ_));
            } catch (const NoSpace& e) {
                throw SchedulingDeadlock("stuck at gate " + std::to_string(gate) + ": " + e.what() + "\n" +
                                         render_occupancy(occ_));
            }
            commit(gate, plan);
        }
        sort_ops(result_.ops);
        result_.recompute_makespan();
        return std::move(result_);
    }

private:
    Tick ready_time(std::size_t gate) const {
        Tick t = 0;
        for (std::size_t p : dag_.preds[gate]) t = std::max(t, gate_end_[p]);
        return t;
    }

    // A state appears once its distillation is done and the port has been
    // vacated by anything crossing it.
    Tick release_time(std::size_t factory) const {
        const Cell port = layout_.factory_ports[factory].cell;
        return std::max(factory_next_[factory] + lat_.distill_period, busy_[layout_.index(port)]);
    }

    struct Placed {
        Tick exec_start = 0;
        std::optional<Tick> departure;
    };

    // Times the plan's ops against `busy`; appends ops to `out` when given.
    Placed place(std::size_t gate, const PlacementPlan& p, std::vector<Tick>& busy, std::vector<ScheduledOp>* out,
                 std::size_t magic_id) const {
        const bool magic = p.factory.has_value();
        const Tick release = magic ? release_time(*p.factory) : 0;
        Placed r;
        for (const auto& m : p.moves) {
            Tick& bf = busy[layout_.index(m.from)];
            Tick& bt = busy[layout_.index(m.to)];
            Tick s = std::max(bf, bt);
            Occupant who = m.who;
            if (who.is_magic()) {
                s = std::max(s, release);
                who.id = magic_id;
                if (!r.departure) r.departure = s;
            }
            bf = bt = s + lat_.move;
            if (out) {
                ScheduledOp op;
                op.kind = OpKind::MoveHop;
                op.cells = {m.from, m.to};
                op.start = s;
                op.duration = lat_.move;
                op.occupant = who;
                out->push_back(std::move(op));
            }
        }
        Tick start = ready_time(gate);
        for (Cell c : p.exec_cells) start = std::max(start, busy[layout_.index(c)]);
        if (magic) start = std::max(start, release);
        if (!r.departure && magic) r.departure = start;
        const Tick dur = lat_.gate_duration(circuit_.gates[gate]);
        for (Cell c : p.exec_cells) {
            Tick& b = busy[layout_.index(c)];
            b = std::max(b, start + dur);
        }
        if (out) {
            ScheduledOp op;
            op.kind = p.factory ? OpKind::MagicConsume : OpKind::GateExec;
            op.cells = p.exec_cells;
            op.start = start;
            op.duration = dur;
            op.gate = gate;
            if (p.factory) op.magic = magic_id;
            out->push_back(std::move(op));
        }
        r.exec_start = start;
        return r;
    }

    Tick estimate(std::size_t gate, const PlacementPlan& p) const {
        std::vector<Tick> scratch = busy_;
        return place(gate, p, scratch, nullptr, 0).exec_start;
    }

    void commit(std::size_t gate, const PlacementPlan& p) {
        std::size_t magic_id = 0;
        if (p.factory) {
            magic_id = next_magic_++;
            ScheduledOp d;
            d.kind = OpKind::Distill;
            d.start = release_time(*p.factory) - lat_.distill_period;
            d.duration = lat_.distill_period;
            d.magic = magic_id;
            d.factory = *p.factory;
            result_.ops.push_back(std::move(d));
        }
        const Placed placed = place(gate, p, busy_, &result_.ops, magic_id);
        gate_end_[gate] = placed.exec_start + lat_.gate_duration(circuit_.gates[gate]);
        if (p.factory) {
            factory_next_[*p.factory] = *placed.departure;
            occ_.place(layout_.factory_ports[*p.factory].cell, Occupant::magic(magic_id));
        }
        for (const auto& m : p.moves) occ_.move(m.from, m.to);
        if (p.factory) occ_.remove(*p.landing);
    }

    const Circuit& circuit_;
    const GridLayout& layout_;
    const SchedulerConfig& cfg_;
    LatencyModel lat_;
    DependencyGraph dag_;
    GatePlanner planner_;
    OccupancyState occ_;
    std::vector<Tick> busy_;
    std::vector<Tick> gate_end_;
    std::vector<Tick> factory_next_;
    std::size_t next_magic_ = 0;
    Schedule result_;
};

}  // namespace sched_detail

inline GridLayout prepare_layout(GridLayout g, const Circuit& c, const SchedulerConfig& cfg) {
    if (g.factory_ports.empty() && cfg.n_factories > 0) g = place_factories(std::move(g), cfg.n_factories);
    if (g.factory_ports.size() != cfg.n_factories) {
        throw InvalidArgument("layout has " + std::to_string(g.factory_ports.size()) + " factory ports, config asks for " +
                              std::to_string(cfg.n_factories));
    }
    if (cfg.n_factories == 0 && count_t_states(c) > 0) {
        throw InvalidArgument("circuit needs magic states but no factory is configured");
    }
    return g;
}

/// Schedules `c` starting from an explicit initial occupancy.
inline Schedule schedule(const Circuit& c, const GridLayout& layout, const SchedulerConfig& cfg,
                         const OccupancyState& initial) {
    check_circuit(c);
    cfg.effective_latency().check();
    const GridLayout g = prepare_layout(layout, c, cfg);
    if (initial.rows() != g.rows || initial.cols() != g.cols || initial.n_qubits() != c.n_qubits) {
        throw MismatchedInputs("initial occupancy does not match circuit and layout");
    }
    for (std::size_t q = 0; q < c.n_qubits; ++q) {
        const auto p = initial.data_position(q);
        if (!p) throw MismatchedInputs("qubit " + std::to_string(q) + " has no initial cell");
        if (g.is_port(*p)) throw MismatchedInputs("qubit " + std::to_string(q) + " starts on a factory port");
    }
    // Try n, n/2, n/4, ... active factories and keep the shortest schedule
    // (ties favour more active factories). The k active ones are the ports
    // nearest to where a k-factory layout would put its ports.
    std::optional<Schedule> best;
    std::optional<SchedulingDeadlock> failure;
    std::vector<std::size_t> counts{g.factory_ports.size()};
    if (cfg.try_idle_factories) {
        while (counts.back() > 1) counts.push_back(counts.back() / 2);
    }
    for (std::size_t k : counts) {
        std::vector<FactoryPort> active;
        if (k == g.factory_ports.size()) {
            active = g.factory_ports;
        } else {
            std::vector<char> taken(g.factory_ports.size(), 0);
            for (const auto& want : place_factories(g, k).factory_ports) {
                std::optional<std::size_t> pick;
                for (std::size_t i = 0; i < g.factory_ports.size(); ++i) {
                    if (taken[i]) continue;
                    if (!pick || manhattan(g.factory_ports[i].cell, want.cell) <
                                     manhattan(g.factory_ports[*pick].cell, want.cell)) {
                        pick = i;
                    }
                }
                taken[*pick] = 1;
            }
            for (std::size_t i = 0; i < g.factory_ports.size(); ++i) {
                if (taken[i]) active.push_back(g.factory_ports[i]);
            }
        }
        try {
            Schedule s = sched_detail::ListScheduler(c, g, cfg, initial, std::move(active)).run();
            if (!best || s.makespan < best->makespan) best = std::move(s);
        } catch (const SchedulingDeadlock& e) {
            if (!failure) failure = e;
        }
    }
    if (!best) throw *failure;
    return std::move(*best);
}

inline Schedule schedule(const Circuit& c, const GridLayout& layout, const SchedulerConfig& cfg) {
    const GridLayout g = prepare_layout(layout, c, cfg);
    return schedule(c, g, cfg, initial_mapping(c, g, cfg.mapping));
}

}  // namespace lsc
