#pragma once

// ASCII grid snapshot at every whole d of a schedule. Each cell shows its
// occupant (qN data, mN magic state, F empty port, . empty bus/slot); a
// trailing '*' marks cells reserved by an op running at that instant.

#include "lsc/schedule.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace lsc {

inline std::string render_trace(const Schedule& s) {
    std::vector<std::size_t> by_start(s.ops.size()), by_end(s.ops.size());
    for (std::size_t i = 0; i < s.ops.size(); ++i) by_start[i] = by_end[i] = i;
    std::stable_sort(by_start.begin(), by_start.end(),
                     [&](std::size_t a, std::size_t b) { return s.ops[a].start < s.ops[b].start; });
    std::stable_sort(by_end.begin(), by_end.end(),
                     [&](std::size_t a, std::size_t b) {
                         const auto& x = s.ops[a];
                         const auto& y = s.ops[b];
                         return std::make_pair(x.end(), x.kind == OpKind::Distill) <
                                std::make_pair(y.end(), y.kind == OpKind::Distill);
                     });

    OccupancyState occ = s.initial;
    std::size_t done = 0;
    std::string out;
    for (Tick t = 0; t <= s.makespan; t += 2) {
        for (; done < by_end.size() && s.ops[by_end[done]].end() <= t; ++done) {
            const auto& op = s.ops[by_end[done]];
            if (op.kind == OpKind::MoveHop && !occ.empty(op.cells[0]) && occ.empty(op.cells[1])) {
                occ.move(op.cells[0], op.cells[1]);
            } else if (op.kind == OpKind::MagicConsume) {
                occ.remove(op.cells[1]);
            } else if (op.kind == OpKind::Distill && op.factory && op.magic) {
                const Cell port = s.layout.factory_ports.at(*op.factory).cell;
                if (occ.empty(port)) occ.place(port, Occupant::magic(*op.magic));
            }
        }
        std::vector<char> active(s.layout.cell_count(), 0);
        for (std::size_t i : by_start) {
            const auto& op = s.ops[i];
            if (op.start > t) break;
            if (op.end() > t) {
                for (Cell c : op.cells) active[s.layout.index(c)] = 1;
            }
        }
        char head[64];
        std::snprintf(head, sizeof head, "t=%gd\n", static_cast<double>(t) / 2.0);
        out += head;
        for (int r = 0; r < s.layout.rows; ++r) {
            for (int c = 0; c < s.layout.cols; ++c) {
                const Cell cell{r, c};
                std::string label = occ.empty(cell) ? (s.layout.is_port(cell) ? "F" : ".") : to_string(occ.at(cell));
                if (active[s.layout.index(cell)]) label += '*';
                char buf[16];
                std::snprintf(buf, sizeof buf, "%6s", label.c_str());
                out += buf;
            }
            out += '\n';
        }
        out += '\n';
    }
    return out;
}

}  // namespace lsc
