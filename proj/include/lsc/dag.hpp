#pragma once

#include "lsc/circuit.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace lsc {

/// Gate dependency DAG: one node per gate (indexed like Circuit::gates), an
/// edge i -> j whenever j is the next gate after i on some shared qubit.
struct DependencyGraph {
    std::vector<std::vector<std::size_t>> preds;
    std::vector<std::vector<std::size_t>> succs;
    /// Longest path (in edges) from any source; sources have depth 0.
    std::vector<std::size_t> depth;

    std::size_t size() const noexcept { return preds.size(); }

    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < succs.size(); ++i) {
            for (std::size_t j : succs[i]) out.emplace_back(i, j);
        }
        return out;
    }

    /// Gates ordered by (depth, program index): the dispatch order.
    std::vector<std::size_t> dispatch_order() const {
        std::vector<std::size_t> order(size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return depth[a] < depth[b]; });
        return order;
    }
};

inline DependencyGraph build_dag(const Circuit& c) {
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    DependencyGraph g;
    g.preds.resize(c.gates.size());
    g.succs.resize(c.gates.size());
    g.depth.assign(c.gates.size(), 0);
    std::vector<std::size_t> last(c.n_qubits, none);

    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        for (std::size_t q : c.gates[i].operands) {
            const std::size_t p = last[q];
            if (p != none && std::find(g.preds[i].begin(), g.preds[i].end(), p) == g.preds[i].end()) {
                g.preds[i].push_back(p);
                g.succs[p].push_back(i);
                g.depth[i] = std::max(g.depth[i], g.depth[p] + 1);
            }
            last[q] = i;
        }
    }
    return g;
}

}  // namespace lsc
