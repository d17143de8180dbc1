#pragma once

#include "lsc/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <vector>

namespace lsc {

struct Cell {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline int manhattan(Cell a, Cell b) {
    return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

inline bool adjacent(Cell a, Cell b) { return manhattan(a, b) == 1; }
inline bool vertically_adjacent(Cell a, Cell b) { return a.col == b.col && std::abs(a.row - b.row) == 1; }
inline bool horizontally_adjacent(Cell a, Cell b) { return a.row == b.row && std::abs(a.col - b.col) == 1; }

/// Neighbour offsets in (row, col) lexicographic order of the resulting cell.
inline constexpr std::array<Cell, 4> neighbour_offsets{{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}};

inline std::string to_string(Cell c) {
    return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

enum class CellKind { DataSlot, Bus };

struct FactoryPort {
    std::size_t factory = 0;
    Cell cell;

    friend bool operator==(const FactoryPort&, const FactoryPort&) = default;
};

inline constexpr std::size_t default_factory_footprint = 11;

/// Data block of side L interleaved with full rows/columns of bus tiles.
struct GridLayout {
    std::size_t side = 0;
    std::size_t routing_paths = 0;
    int rows = 0;
    int cols = 0;
    std::vector<bool> bus_row;
    std::vector<bool> bus_col;
    /// Cells of the data slots, row-major (slot i holds data coordinate
    /// (i / side, i % side)).
    std::vector<Cell> data_slots;
    std::vector<FactoryPort> factory_ports;
    std::size_t factory_footprint = default_factory_footprint;

    std::size_t cell_count() const noexcept { return static_cast<std::size_t>(rows) * cols; }
    std::size_t horizontal_lines() const;
    std::size_t vertical_lines() const;

    bool in_bounds(Cell c) const noexcept { return c.row >= 0 && c.col >= 0 && c.row < rows && c.col < cols; }
    std::size_t index(Cell c) const noexcept { return static_cast<std::size_t>(c.row) * cols + c.col; }
    Cell cell_at(std::size_t idx) const noexcept {
        return {static_cast<int>(idx / cols), static_cast<int>(idx % cols)};
    }

    CellKind kind(Cell c) const {
        return (bus_row[c.row] || bus_col[c.col]) ? CellKind::Bus : CellKind::DataSlot;
    }

    bool is_port(Cell c) const {
        for (const auto& p : factory_ports) {
            if (p.cell == c) return true;
        }
        return false;
    }

    std::size_t bus_cells() const { return cell_count() - data_slots.size(); }

    friend bool operator==(const GridLayout&, const GridLayout&) = default;
};

inline std::size_t GridLayout::horizontal_lines() const {
    std::size_t n = 0;
    for (bool b : bus_row) n += b;
    return n;
}

inline std::size_t GridLayout::vertical_lines() const {
    std::size_t n = 0;
    for (bool b : bus_col) n += b;
    return n;
}

inline std::size_t max_routing_paths(std::size_t side) { return 2 * side + 2; }

namespace layout_detail {

// `k` interior lines in the side-1 gaps between data lines. Blocks of data
// lines between consecutive lines are as large as possible at the minimum;
// leftover lines go to the last block.
inline std::vector<bool> axis(std::size_t side, bool first, bool last, std::size_t interior) {
    std::vector<bool> gap_after(side, false);
    if (interior > 0) {
        const std::size_t block = side / (interior + 1);
        for (std::size_t i = 0; i < interior; ++i) gap_after[(i + 1) * block - 1] = true;
    }
    std::vector<bool> out;
    if (first) out.push_back(true);
    for (std::size_t i = 0; i < side; ++i) {
        out.push_back(false);
        if (i + 1 < side && gap_after[i]) out.push_back(true);
    }
    if (last) out.push_back(true);
    return out;
}

}  // namespace layout_detail

/// Routing lines are added in the order: top row, left column, bottom row,
/// right column, then alternately an interior column and an interior row.
inline GridLayout build_layout(std::size_t side, std::size_t routing_paths) {
    if (side < 1) throw InvalidArgument("layout side must be >= 1");
    if (routing_paths < 2 || routing_paths > max_routing_paths(side)) {
        throw InvalidRoutingCount("routing paths must lie in [2, " + std::to_string(max_routing_paths(side)) +
                                  "] for side " + std::to_string(side) + ", got " +
                                  std::to_string(routing_paths));
    }
    const std::size_t r = routing_paths;
    const bool top = true;
    const bool left = true;
    const bool bottom = r >= 3;
    const bool right = r >= 4;
    const std::size_t extra = r > 4 ? r - 4 : 0;
    const std::size_t interior_cols = (extra + 1) / 2;
    const std::size_t interior_rows = extra / 2;

    GridLayout g;
    g.side = side;
    g.routing_paths = r;
    g.bus_row = layout_detail::axis(side, top, bottom, interior_rows);
    g.bus_col = layout_detail::axis(side, left, right, interior_cols);
    g.rows = static_cast<int>(g.bus_row.size());
    g.cols = static_cast<int>(g.bus_col.size());
    for (int row = 0; row < g.rows; ++row) {
        if (g.bus_row[row]) continue;
        for (int col = 0; col < g.cols; ++col) {
            if (!g.bus_col[col]) g.data_slots.push_back({row, col});
        }
    }
    return g;
}

namespace layout_detail {

inline void pick_evenly(const std::vector<Cell>& side, std::size_t m, std::vector<Cell>& out) {
    const std::size_t len = side.size();
    if (m == len) {
        out.insert(out.end(), side.begin(), side.end());
        return;
    }
    for (std::size_t k = 1; k <= m; ++k) out.push_back(side[len * k / (m + 1)]);
}

}  // namespace layout_detail

/// Factory ports evenly spaced along the top boundary, spilling over to the
/// bottom, left and right boundaries when a side runs out of bus cells.
inline GridLayout place_factories(GridLayout g, std::size_t n_factories) {
    if (n_factories == 0) throw InvalidArgument("at least one factory is required");
    std::vector<Cell> top, bottom, left, right;
    const bool top_bus = g.bus_row.front();
    const bool bottom_bus = g.rows > 1 && g.bus_row.back();
    for (int col = 0; col < g.cols; ++col) {
        if (top_bus) top.push_back({0, col});
        if (bottom_bus) bottom.push_back({g.rows - 1, col});
    }
    for (int row = 0; row < g.rows; ++row) {
        if ((row == 0 && top_bus) || (row == g.rows - 1 && bottom_bus)) continue;
        if (g.bus_col.front()) left.push_back({row, 0});
        if (g.cols > 1 && g.bus_col.back()) right.push_back({row, g.cols - 1});
    }

    std::vector<Cell> ports;
    std::size_t remaining = n_factories;
    for (const auto* side : {&top, &bottom, &left, &right}) {
        const std::size_t m = std::min(remaining, side->size());
        layout_detail::pick_evenly(*side, m, ports);
        remaining -= m;
    }
    if (remaining > 0) {
        throw NoBoundaryBus("only " + std::to_string(ports.size()) + " boundary bus cells for " +
                            std::to_string(n_factories) + " factories");
    }
    g.factory_ports.clear();
    for (std::size_t i = 0; i < ports.size(); ++i) g.factory_ports.push_back({i, ports[i]});
    return g;
}

inline std::size_t total_qubits(const GridLayout& g, bool include_factories) {
    return g.cell_count() + (include_factories ? g.factory_ports.size() * g.factory_footprint : 0);
}

/// `D` data slot, `.` bus, `F` factory port; one line per row.
inline std::string render_ascii(const GridLayout& g) {
    std::string out;
    for (int row = 0; row < g.rows; ++row) {
        for (int col = 0; col < g.cols; ++col) {
            const Cell c{row, col};
            out += g.is_port(c) ? 'F' : (g.kind(c) == CellKind::DataSlot ? 'D' : '.');
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::json to_json(const GridLayout& g) {
    nlohmann::json runs = nlohmann::json::array();
    char cur = 0;
    std::size_t len = 0;
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
        const char k = g.kind(g.cell_at(i)) == CellKind::DataSlot ? 'D' : 'B';
        if (k != cur && len) {
            runs.push_back({std::string(1, cur), len});
            len = 0;
        }
        cur = k;
        ++len;
    }
    if (len) runs.push_back({std::string(1, cur), len});

    nlohmann::json slots = nlohmann::json::array();
    for (Cell c : g.data_slots) slots.push_back({c.row, c.col});
    nlohmann::json ports = nlohmann::json::array();
    for (const auto& p : g.factory_ports) ports.push_back({{"factory", p.factory}, {"row", p.cell.row}, {"col", p.cell.col}});
    return {{"rows", g.rows},
            {"cols", g.cols},
            {"r", g.routing_paths},
            {"side", g.side},
            {"cells", std::move(runs)},
            {"data_positions", std::move(slots)},
            {"factory_ports", std::move(ports)},
            {"factory_footprint", g.factory_footprint}};
}

}  // namespace lsc
