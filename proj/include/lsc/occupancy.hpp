#pragma once

#include "lsc/circuit.hpp"
#include "lsc/errors.hpp"
#include "lsc/layout.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lsc {

using Tick = std::int64_t;

struct Occupant {
    enum class Kind : std::uint8_t { Empty, Data, Magic };
    Kind kind = Kind::Empty;
    std::size_t id = 0;

    static Occupant data(std::size_t q) { return {Kind::Data, q}; }
    static Occupant magic(std::size_t m) { return {Kind::Magic, m}; }

    bool empty() const noexcept { return kind == Kind::Empty; }
    bool is_data() const noexcept { return kind == Kind::Data; }
    bool is_magic() const noexcept { return kind == Kind::Magic; }

    friend bool operator==(const Occupant&, const Occupant&) = default;
};

inline std::string to_string(const Occupant& o) {
    switch (o.kind) {
        case Occupant::Kind::Empty: return "empty";
        case Occupant::Kind::Data: return "q" + std::to_string(o.id);
        case Occupant::Kind::Magic: return "m" + std::to_string(o.id);
    }
    return "?";
}

/// Live contents of every grid cell plus the per-cell reservation horizon.
/// Data qubits are tracked both ways (cell -> occupant, qubit -> cell).
class OccupancyState {
public:
    OccupancyState() = default;
    OccupancyState(int rows, int cols, std::size_t n_qubits)
        : rows_(rows), cols_(cols),
          cells_(static_cast<std::size_t>(rows) * cols),
          reserved_until_(cells_.size(), 0),
          data_pos_(n_qubits) {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    std::size_t n_qubits() const noexcept { return data_pos_.size(); }

    bool in_bounds(Cell c) const noexcept { return c.row >= 0 && c.col >= 0 && c.row < rows_ && c.col < cols_; }
    std::size_t index(Cell c) const noexcept { return static_cast<std::size_t>(c.row) * cols_ + c.col; }
    Cell cell_at_index(std::size_t i) const noexcept {
        return {static_cast<int>(i / static_cast<std::size_t>(cols_)), static_cast<int>(i % static_cast<std::size_t>(cols_))};
    }

    const Occupant& at(Cell c) const { return cells_[index(c)]; }
    bool empty(Cell c) const { return at(c).empty(); }
    bool holds_data(Cell c) const { return at(c).is_data(); }

    std::optional<Cell> data_position(std::size_t q) const { return data_pos_.at(q); }
    Cell position(std::size_t q) const {
        const auto& p = data_pos_.at(q);
        if (!p) throw InvalidArgument("qubit " + std::to_string(q) + " is not placed");
        return *p;
    }

    Tick reserved_until(Cell c) const { return reserved_until_[index(c)]; }
    void reserve(Cell c, Tick until) {
        Tick& r = reserved_until_[index(c)];
        if (until > r) r = until;
    }

    void place(Cell c, Occupant o) {
        if (!empty(c)) throw InvalidArgument("cell " + lsc::to_string(c) + " already holds " + lsc::to_string(at(c)));
        if (o.is_data()) {
            auto& p = data_pos_.at(o.id);
            if (p) throw InvalidArgument("qubit " + std::to_string(o.id) + " placed twice");
            p = c;
        }
        cells_[index(c)] = o;
    }

    Occupant remove(Cell c) {
        Occupant o = at(c);
        if (o.is_data()) data_pos_[o.id].reset();
        cells_[index(c)] = Occupant{};
        return o;
    }

    /// Relocates the occupant of `from` into the empty cell `to`.
    void move(Cell from, Cell to) {
        if (empty(from)) throw InvalidArgument("move from empty cell " + lsc::to_string(from));
        if (!empty(to)) throw InvalidArgument("move into occupied cell " + lsc::to_string(to));
        const Occupant o = remove(from);
        place(to, o);
    }

    std::vector<Cell> empty_cells() const {
        std::vector<Cell> out;
        for (int r = 0; r < rows_; ++r) {
            for (int c = 0; c < cols_; ++c) {
                if (empty({r, c})) out.push_back({r, c});
            }
        }
        return out;
    }

    /// At most one occupant per cell, mapping injective and consistent.
    bool consistent() const {
        std::size_t placed = 0;
        for (std::size_t q = 0; q < data_pos_.size(); ++q) {
            if (!data_pos_[q]) continue;
            ++placed;
            const Occupant& o = at(*data_pos_[q]);
            if (!o.is_data() || o.id != q) return false;
        }
        std::size_t seen = 0;
        for (const auto& o : cells_) seen += o.is_data();
        return seen == placed;
    }

    friend bool operator==(const OccupancyState&, const OccupancyState&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Occupant> cells_;
    std::vector<Tick> reserved_until_;
    std::vector<std::optional<Cell>> data_pos_;
};

/// One line per grid row, cells as `.`, `qN` or `mN`, tab separated.
inline std::string render_occupancy(const OccupancyState& occ) {
    std::string out;
    for (int r = 0; r < occ.rows(); ++r) {
        for (int c = 0; c < occ.cols(); ++c) {
            if (c) out += '\t';
            out += occ.empty({r, c}) ? std::string(".") : to_string(occ.at({r, c}));
        }
        out += '\n';
    }
    return out;
}

enum class MappingMode { Grid2D, Snake1D };

/// Slots in boustrophedon order: data row 0 left to right, row 1 right to
/// left, and so on.
inline std::vector<Cell> snake_order(const GridLayout& g) {
    std::vector<Cell> out;
    out.reserve(g.data_slots.size());
    const std::size_t L = g.side;
    for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t j = 0; j < L; ++j) {
            const std::size_t jj = (i % 2 == 0) ? j : L - 1 - j;
            out.push_back(g.data_slots[i * L + jj]);
        }
    }
    return out;
}

inline OccupancyState initial_mapping(const Circuit& c, const GridLayout& g, MappingMode mode = MappingMode::Grid2D) {
    if (c.n_qubits > g.data_slots.size()) {
        throw TooManyQubits(std::to_string(c.n_qubits) + " qubits do not fit " +
                            std::to_string(g.data_slots.size()) + " data slots");
    }
    OccupancyState occ(g.rows, g.cols, c.n_qubits);
    const std::vector<Cell> order = mode == MappingMode::Grid2D ? g.data_slots : snake_order(g);
    for (std::size_t q = 0; q < c.n_qubits; ++q) occ.place(order[q], Occupant::data(q));
    return occ;
}

}  // namespace lsc
