#pragma once

// Single-Trotter-step circuits for 2D nearest-neighbour spin models on an
// L x L lattice (row-major qubit indexing). Each two-body exponential uses
// the usual CNOT-conjugated RZ: ZZ = CX RZ CX, XX adds H on both sides,
// YY adds Sdg.H before and H.S after.

#include "lsc/circuit.hpp"
#include "lsc/errors.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lsc {

enum class Model { Ising2D, Heisenberg2D, FermiHubbard2D };

struct LatticeSpec {
    std::size_t side = 2;
    Model model = Model::Ising2D;
    std::size_t trotter_steps = 1;
    double angle = 0.1;
};

inline std::string_view model_name(Model m) {
    switch (m) {
        case Model::Ising2D: return "ising";
        case Model::Heisenberg2D: return "heisenberg";
        case Model::FermiHubbard2D: return "fermihubbard";
    }
    return "?";
}

inline std::optional<Model> model_from_name(std::string_view s) {
    for (Model m : {Model::Ising2D, Model::Heisenberg2D, Model::FermiHubbard2D}) {
        if (model_name(m) == s) return m;
    }
    return std::nullopt;
}

/// `<model>_<L>x<L>`
inline std::string benchmark_name(const LatticeSpec& spec) {
    const std::string l = std::to_string(spec.side);
    return std::string(model_name(spec.model)) + "_" + l + "x" + l;
}

namespace benchgen_detail {

using Edge = std::pair<std::size_t, std::size_t>;

inline void check(const LatticeSpec& spec, Model want) {
    if (spec.model != want) throw InvalidSpec("lattice spec model does not match generator");
    if (spec.side < 2) throw InvalidSpec("lattice side must be >= 2");
    if (spec.trotter_steps < 1) throw InvalidSpec("trotter_steps must be >= 1");
}

/// Nearest-neighbour bonds in brick order: even then odd horizontal bonds,
/// then even then odd vertical bonds. `parity` restricts to one sublattice.
inline std::vector<Edge> bonds(std::size_t L, bool horizontal, std::optional<std::size_t> parity = {}) {
    std::vector<Edge> out;
    for (std::size_t p = 0; p < 2; ++p) {
        if (parity && *parity != p) continue;
        for (std::size_t r = 0; r < L; ++r) {
            for (std::size_t c = 0; c < L; ++c) {
                const std::size_t along = horizontal ? c : r;
                if (along % 2 != p || along + 1 >= L) continue;
                const std::size_t a = r * L + c;
                out.emplace_back(a, horizontal ? a + 1 : a + L);
            }
        }
    }
    return out;
}

inline void zz(Circuit& c, Edge e, double theta) {
    c.gates.push_back(Gate::cnot(e.first, e.second));
    c.gates.push_back(Gate::rz(e.second, theta));
    c.gates.push_back(Gate::cnot(e.first, e.second));
}

inline void both(Circuit& c, GateKind k, Edge e) {
    c.gates.push_back(Gate::single(k, e.first));
    c.gates.push_back(Gate::single(k, e.second));
}

inline void xx(Circuit& c, Edge e, double theta) {
    both(c, GateKind::H, e);
    zz(c, e, theta);
    both(c, GateKind::H, e);
}

inline void yy(Circuit& c, Edge e, double theta) {
    both(c, GateKind::Sdg, e);
    both(c, GateKind::H, e);
    zz(c, e, theta);
    both(c, GateKind::H, e);
    both(c, GateKind::S, e);
}

inline std::vector<Edge> all_bonds(std::size_t L) {
    auto out = bonds(L, true);
    auto v = bonds(L, false);
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

inline Circuit blank(const LatticeSpec& spec) {
    Circuit c;
    c.name = benchmark_name(spec);
    c.n_qubits = spec.side * spec.side;
    return c;
}

}  // namespace benchgen_detail

inline Circuit gen_ising2d(const LatticeSpec& spec) {
    using namespace benchgen_detail;
    check(spec, Model::Ising2D);
    Circuit c = blank(spec);
    for (std::size_t q = 0; q < c.n_qubits; ++q) c.gates.push_back(Gate::single(GateKind::H, q));
    const auto edges = all_bonds(spec.side);
    for (std::size_t step = 0; step < spec.trotter_steps; ++step) {
        for (Edge e : edges) zz(c, e, spec.angle);
        for (std::size_t q = 0; q < c.n_qubits; ++q) {
            c.gates.push_back(Gate::single(GateKind::H, q));
            c.gates.push_back(Gate::rz(q, spec.angle));
            c.gates.push_back(Gate::single(GateKind::H, q));
        }
    }
    return c;
}

inline Circuit gen_heisenberg2d(const LatticeSpec& spec) {
    using namespace benchgen_detail;
    check(spec, Model::Heisenberg2D);
    Circuit c = blank(spec);
    const auto edges = all_bonds(spec.side);
    for (std::size_t step = 0; step < spec.trotter_steps; ++step) {
        for (Edge e : edges) {
            xx(c, e, spec.angle);
            yy(c, e, spec.angle);
            zz(c, e, spec.angle);
        }
    }
    return c;
}

/// Hopping on even horizontal bonds, on-site style interaction on even
/// vertical bonds (L^2/2 of each); requires even L.
inline Circuit gen_fermi_hubbard2d(const LatticeSpec& spec) {
    using namespace benchgen_detail;
    check(spec, Model::FermiHubbard2D);
    if (spec.side % 2 != 0) throw InvalidSpec("Fermi-Hubbard lattice side must be even");
    Circuit c = blank(spec);
    const auto hopping = bonds(spec.side, true, 0);
    const auto interaction = bonds(spec.side, false, 0);
    for (std::size_t step = 0; step < spec.trotter_steps; ++step) {
        for (Edge e : hopping) {
            xx(c, e, spec.angle);
            yy(c, e, spec.angle);
        }
        for (Edge e : interaction) zz(c, e, spec.angle);
    }
    return c;
}

inline Circuit generate(const LatticeSpec& spec) {
    switch (spec.model) {
        case Model::Ising2D: return gen_ising2d(spec);
        case Model::Heisenberg2D: return gen_heisenberg2d(spec);
        case Model::FermiHubbard2D: return gen_fermi_hubbard2d(spec);
    }
    throw InvalidSpec("unknown model");
}

}  // namespace lsc
