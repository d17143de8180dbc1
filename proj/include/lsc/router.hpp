#pragma once

// Penalty-weighted Dijkstra over the 4-neighbour cell grid and the
// ancilla "space search" built on top of it.
//
// Search weight of entering a cell is 1 + penalty * [cell holds a data
// qubit]. With penalty >= grid area the search first minimises the number
// of data qubits disturbed, then the hop count. The reported cost attached
// to a path is hops * occupied_crossed.

#include "lsc/errors.hpp"
#include "lsc/layout.hpp"
#include "lsc/occupancy.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace lsc {

inline constexpr std::int64_t default_penalty = 1000;

/// Dense cell membership mask sized to a grid.
class CellSet {
public:
    CellSet() = default;
    CellSet(int rows, int cols) : cols_(cols), bits_(static_cast<std::size_t>(rows) * cols, 0) {}
    CellSet(int rows, int cols, std::initializer_list<Cell> cells) : CellSet(rows, cols) {
        for (Cell c : cells) insert(c);
    }

    void insert(Cell c) { bits_[idx(c)] = 1; }
    void erase(Cell c) { bits_[idx(c)] = 0; }
    bool contains(Cell c) const { return !bits_.empty() && bits_[idx(c)] != 0; }
    bool sized() const noexcept { return !bits_.empty(); }

private:
    std::size_t idx(Cell c) const { return static_cast<std::size_t>(c.row) * cols_ + c.col; }
    int cols_ = 0;
    std::vector<char> bits_;
};

struct Path {
    std::vector<Cell> cells;
    std::size_t hops = 0;
    std::size_t occupied_crossed = 0;
    std::size_t reported_cost = 0;
    std::int64_t search_cost = 0;
};

struct Move {
    Cell from;
    Cell to;

    friend bool operator==(const Move&, const Move&) = default;
};

namespace router_detail {

struct SearchTree {
    std::vector<std::int64_t> dist;
    std::vector<std::int64_t> parent;
    std::vector<std::size_t> settled_order;
    std::optional<std::size_t> reached;
};

inline std::int64_t enter_weight(const OccupancyState& occ, Cell c, std::int64_t penalty) {
    return 1 + (occ.holds_data(c) ? penalty : 0);
}

// Settles cells in (cost, row, col) order until `is_target` accepts one.
template <typename Target>
SearchTree search(const OccupancyState& occ, Cell src, const CellSet& forbidden, std::int64_t penalty,
                  Target&& is_target) {
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
    const std::size_t n = static_cast<std::size_t>(occ.rows()) * occ.cols();
    SearchTree t{std::vector<std::int64_t>(n, inf), std::vector<std::int64_t>(n, -1), {}, std::nullopt};
    std::vector<char> done(n, 0);

    using Entry = std::tuple<std::int64_t, int, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    t.dist[occ.index(src)] = 0;
    heap.emplace(0, src.row, src.col);

    while (!heap.empty()) {
        auto [d, row, col] = heap.top();
        heap.pop();
        const Cell c{row, col};
        const std::size_t ci = occ.index(c);
        if (done[ci]) continue;
        done[ci] = 1;
        t.settled_order.push_back(ci);
        if (c != src && is_target(c)) {
            t.reached = ci;
            return t;
        }
        for (Cell off : neighbour_offsets) {
            const Cell nb{c.row + off.row, c.col + off.col};
            if (!occ.in_bounds(nb) || forbidden.contains(nb)) continue;
            const std::size_t ni = occ.index(nb);
            if (done[ni]) continue;
            const std::int64_t nd = d + enter_weight(occ, nb, penalty);
            if (nd < t.dist[ni]) {
                t.dist[ni] = nd;
                t.parent[ni] = static_cast<std::int64_t>(ci);
                heap.emplace(nd, nb.row, nb.col);
            }
        }
    }
    return t;
}

inline Path extract(const OccupancyState& occ, const SearchTree& t) {
    Path p;
    for (std::int64_t i = static_cast<std::int64_t>(*t.reached); i >= 0; i = t.parent[i]) {
        p.cells.push_back({static_cast<int>(i / occ.cols()), static_cast<int>(i % occ.cols())});
    }
    std::reverse(p.cells.begin(), p.cells.end());
    p.hops = p.cells.size() - 1;
    for (std::size_t i = 1; i < p.cells.size(); ++i) p.occupied_crossed += occ.holds_data(p.cells[i]);
    p.reported_cost = p.hops * p.occupied_crossed;
    p.search_cost = t.dist[*t.reached];
    return p;
}

inline CellSet sized(const OccupancyState& occ, const CellSet& s) {
    return s.sized() ? s : CellSet(occ.rows(), occ.cols());
}

}  // namespace router_detail

inline Path find_path(const OccupancyState& occ, Cell src, Cell dst, const CellSet& forbidden = {},
                      std::int64_t penalty = default_penalty) {
    if (!occ.in_bounds(src) || !occ.in_bounds(dst)) throw InvalidArgument("path endpoint out of bounds");
    if (src == dst) throw InvalidArgument("path source equals destination");
    const CellSet mask = router_detail::sized(occ, forbidden);
    if (mask.contains(dst)) throw InvalidArgument("path destination is forbidden");
    auto tree = router_detail::search(occ, src, mask, penalty, [dst](Cell c) { return c == dst; });
    if (!tree.reached) throw NoPath("no path from " + to_string(src) + " to " + to_string(dst));
    return router_detail::extract(occ, tree);
}

/// Single-hop moves that empty `cell` by shifting the chain of occupants on
/// the cheapest route to the nearest empty cell, one step each. Moves are in
/// execution order (the occupant next to the hole moves first). Magic states
/// are never shifted.
inline std::optional<std::vector<Move>> clearing_moves(const OccupancyState& occ, Cell cell, const CellSet& forbidden = {},
                                                       std::int64_t penalty = default_penalty) {
    if (occ.empty(cell)) return std::vector<Move>{};
    if (occ.at(cell).is_magic()) return std::nullopt;
    CellSet mask = router_detail::sized(occ, forbidden);
    for (int r = 0; r < occ.rows(); ++r) {
        for (int c = 0; c < occ.cols(); ++c) {
            if (occ.at({r, c}).is_magic()) mask.insert({r, c});
        }
    }
    auto tree = router_detail::search(occ, cell, mask, penalty, [&](Cell c) { return occ.empty(c); });
    if (!tree.reached) return std::nullopt;
    Path p = router_detail::extract(occ, tree);
    std::size_t hole = 1;
    while (!occ.empty(p.cells[hole])) ++hole;
    std::vector<Move> moves;
    for (std::size_t i = hole; i-- > 0;) moves.push_back({p.cells[i], p.cells[i + 1]});
    return moves;
}

enum class AdjacencyRequirement { AnyNeighbour, VerticalNeighbour, HorizontalNeighbour, DiagonalWithSharedAncilla };

struct SpaceSearchResult {
    Cell ancilla;
    std::vector<Move> clearing_moves;
};

/// Candidate ancilla cells around `target` for a requirement, in (row, col)
/// order. DiagonalWithSharedAncilla asks for a vertical neighbour that also
/// has a horizontal neighbour in the grid, so a partner can sit diagonally.
inline std::vector<Cell> ancilla_candidates(const OccupancyState& occ, Cell target, AdjacencyRequirement req) {
    std::vector<Cell> out;
    for (Cell off : neighbour_offsets) {
        const Cell nb{target.row + off.row, target.col + off.col};
        if (!occ.in_bounds(nb)) continue;
        const bool vertical = off.col == 0;
        switch (req) {
            case AdjacencyRequirement::AnyNeighbour: break;
            case AdjacencyRequirement::VerticalNeighbour:
                if (!vertical) continue;
                break;
            case AdjacencyRequirement::HorizontalNeighbour:
                if (vertical) continue;
                break;
            case AdjacencyRequirement::DiagonalWithSharedAncilla:
                if (!vertical || !(occ.in_bounds({nb.row, nb.col - 1}) || occ.in_bounds({nb.row, nb.col + 1}))) continue;
                break;
        }
        out.push_back(nb);
    }
    return out;
}

/// Picks the neighbour of `target` that needs the fewest single-hop moves to
/// empty, ties broken by (row, col).
inline SpaceSearchResult space_search(const OccupancyState& occ, Cell target, AdjacencyRequirement required,
                                      const CellSet& forbidden = {}, std::int64_t penalty = default_penalty) {
    CellSet mask = router_detail::sized(occ, forbidden);
    mask.insert(target);
    std::optional<SpaceSearchResult> best;
    for (Cell cand : ancilla_candidates(occ, target, required)) {
        if (forbidden.sized() && forbidden.contains(cand)) continue;
        auto moves = clearing_moves(occ, cand, mask, penalty);
        if (!moves) continue;
        if (!best || moves->size() < best->clearing_moves.size()) best = SpaceSearchResult{cand, std::move(*moves)};
    }
    if (!best) throw NoSpace("no clearable ancilla next to " + to_string(target));
    return *best;
}

/// Graphviz rendering of the settled Dijkstra tree from `src` towards `dst`;
/// edges carry the cost of entering the child, the chosen path is green and
/// settled cells off the path are red.
inline std::string dijkstra_tree_dot(const OccupancyState& occ, Cell src, Cell dst, const CellSet& forbidden = {},
                                     std::int64_t penalty = default_penalty) {
    const CellSet mask = router_detail::sized(occ, forbidden);
    auto tree = router_detail::search(occ, src, mask, penalty, [dst](Cell c) { return c == dst; });
    CellSet on_path(occ.rows(), occ.cols());
    if (tree.reached) {
        for (Cell c : router_detail::extract(occ, tree).cells) on_path.insert(c);
    }
    auto name = [&](std::size_t i) {
        return "\"" + std::to_string(i / occ.cols()) + "," + std::to_string(i % occ.cols()) + "\"";
    };
    std::ostringstream out;
    out << "digraph dijkstra {\n";
    for (std::size_t i : tree.settled_order) {
        const Cell c{static_cast<int>(i / occ.cols()), static_cast<int>(i % occ.cols())};
        out << "  " << name(i) << " [style=filled, fillcolor=" << (on_path.contains(c) ? "green" : "red") << "];\n";
        if (tree.parent[i] >= 0) {
            const auto p = static_cast<std::size_t>(tree.parent[i]);
            out << "  " << name(p) << " -> " << name(i) << " [label=\"" << router_detail::enter_weight(occ, c, penalty)
                << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace lsc
