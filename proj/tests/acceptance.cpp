// Acceptance run: one PASS/FAIL line per criterion, each with its runtime
// budget. Exit status is nonzero if any gating criterion fails.

#include "lsc/lsc.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace lsc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= budget_s) {
        out.pass = false;
        out.detail += " [over budget " + format_number(budget_s) + "s]";
    }
    if (!out.pass) ++failures;
    std::printf("%s criterion %d (%s): %s (%.2fs)\n", out.pass ? "PASS" : "FAIL", id, name, out.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

CompileOptions options(std::size_t L, std::size_t r, std::size_t n, double t_msf_d = 11) {
    CompileOptions opt;
    opt.side = L;
    opt.routing_paths = r;
    opt.scheduler.n_factories = n;
    opt.scheduler.latency.distill_period = period_ticks(t_msf_d);
    return opt;
}

std::string jsonl(const Schedule& s) {
    std::ostringstream out;
    write_jsonl(out, s);
    return out.str();
}

// ---- router oracles ---------------------------------------------------------

constexpr std::int64_t unreachable = std::numeric_limits<std::int64_t>::max();

std::int64_t bellman_ford(const OccupancyState& occ, Cell src, Cell dst, const CellSet& forbidden, std::int64_t penalty) {
    const int n = occ.rows() * occ.cols();
    std::vector<std::int64_t> dist(n, unreachable);
    dist[occ.index(src)] = 0;
    for (int round = 0; round < n; ++round) {
        bool changed = false;
        for (int r = 0; r < occ.rows(); ++r) {
            for (int c = 0; c < occ.cols(); ++c) {
                const std::int64_t du = dist[occ.index({r, c})];
                if (du == unreachable) continue;
                for (Cell off : neighbour_offsets) {
                    const Cell v{r + off.row, c + off.col};
                    if (!occ.in_bounds(v) || forbidden.contains(v)) continue;
                    const std::int64_t w = 1 + (occ.holds_data(v) ? penalty : 0);
                    if (du + w < dist[occ.index(v)]) {
                        dist[occ.index(v)] = du + w;
                        changed = true;
                    }
                }
            }
        }
        if (!changed) break;
    }
    return dist[occ.index(dst)];
}

// Fewest data cells entered over all simple paths, then fewest hops.
struct Exhaustive {
    const OccupancyState& occ;
    Cell dst;
    std::vector<char> on_path;
    std::pair<std::size_t, std::size_t> best{std::numeric_limits<std::size_t>::max(), 0};

    void dfs(Cell u, std::size_t crossed, std::size_t hops) {
        if (std::make_pair(crossed, hops) >= best) return;
        if (u == dst) {
            best = {crossed, hops};
            return;
        }
        for (Cell off : neighbour_offsets) {
            const Cell v{u.row + off.row, u.col + off.col};
            if (!occ.in_bounds(v) || on_path[occ.index(v)]) continue;
            on_path[occ.index(v)] = 1;
            dfs(v, crossed + occ.holds_data(v), hops + 1);
            on_path[occ.index(v)] = 0;
        }
    }
};

// ---- criteria -----------------------------------------------------------------

Outcome layout_counts() {
    const std::size_t a = build_layout(10, 4).cell_count(), b = build_layout(10, 6).cell_count();
    return {a == 144 && b == 169, "L=10 r=4 -> " + std::to_string(a) + " cells, r=6 -> " + std::to_string(b)};
}

Outcome table_one() {
    const std::vector<std::pair<Model, GateCounts>> want{
        {Model::Ising2D, {{GateKind::CNOT, 360}, {GateKind::RZ, 280}, {GateKind::H, 300}}},
        {Model::Heisenberg2D,
         {{GateKind::H, 1440}, {GateKind::CNOT, 1080}, {GateKind::RZ, 540}, {GateKind::S, 360}, {GateKind::Sdg, 360}}},
        {Model::FermiHubbard2D,
         {{GateKind::H, 400}, {GateKind::CNOT, 300}, {GateKind::RZ, 150}, {GateKind::S, 100}, {GateKind::Sdg, 100}}}};
    Outcome out;
    for (const auto& [m, counts] : want) {
        const GateCounts got = gate_counts(generate({10, m}));
        if (got != counts) out.pass = false;
        out.detail += std::string(out.detail.empty() ? "" : "; ") + benchmark_name({10, m}) + " {" + format_counts(got) + "}";
    }
    return out;
}

struct GridPoint {
    LatticeSpec bench;
    std::size_t r, n;
};

std::vector<GridPoint> criterion_three_grid() {
    std::vector<GridPoint> pts;
    for (Model m : {Model::Ising2D, Model::Heisenberg2D, Model::FermiHubbard2D}) {
        for (std::size_t L : {2u, 4u, 6u}) {
            for (std::size_t r : {2u, 3u, 4u, 6u}) {
                for (std::size_t n : {1u, 2u, 4u}) pts.push_back({{L, m}, r, n});
            }
        }
    }
    return pts;
}

Outcome lower_bound_grid() {
    std::size_t ok = 0, total = 0;
    std::string first_bad;
    double worst = std::numeric_limits<double>::max();
    for (const auto& p : criterion_three_grid()) {
        ++total;
        const Circuit c = generate(p.bench);
        const std::string tag = c.name + " r=" + std::to_string(p.r) + " n=" + std::to_string(p.n);
        try {
            const CompileResult res = compile(c, options(p.bench.side, p.r, p.n));
            const auto& m = res.metrics;
            const bool good = m.exec_time_d >= m.lower_bound_d && res.report.clean() && res.unit_report.clean();
            if (m.lower_bound_d > 0) worst = std::min(worst, m.exec_time_d / m.lower_bound_d);
            if (good) ++ok;
            else if (first_bad.empty()) first_bad = tag;
        } catch (const std::exception& e) {
            if (first_bad.empty()) first_bad = tag + ": " + e.what();
        }
    }
    Outcome out{ok == total, std::to_string(ok) + "/" + std::to_string(total) +
                                 " points with exec >= lower bound and zero violations; min exec/lb " + fmt(worst)};
    if (!first_bad.empty()) out.detail += "; first failure " + first_bad;
    return out;
}

struct LargeRun {
    CompileResult res;
    bool ran = false;
};

Outcome overhead_target(LargeRun& run) {
    const Circuit c = generate({10, Model::Ising2D});
    run.res = compile(c, options(10, 4, 1));
    run.ran = true;
    const auto& m = run.res.metrics;
    const double exec_ratio = m.exec_time_d / m.lower_bound_d;
    const double unit_ratio = m.unit_cost_time_d / m.lower_bound_d;
    const bool clean = run.res.report.clean() && run.res.unit_report.clean();
    return {exec_ratio <= 1.5 && unit_ratio <= 1.4 && clean,
            "ising_10x10 r=4 n=1: exec " + fmt(m.exec_time_d) + "d, unit " + fmt(m.unit_cost_time_d) + "d, lb " +
                fmt(m.lower_bound_d) + "d, exec/lb " + fmt(exec_ratio) + " (<= 1.5), unit/lb " + fmt(unit_ratio) +
                " (<= 1.4), violations " + std::to_string(run.res.report.violations.size())};
}

Outcome router_oracles() {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> c8(0, 7);
    std::bernoulli_distribution filled(0.35), forbid(0.1);
    std::size_t bf_ok = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        OccupancyState occ(8, 8, 64);
        CellSet forbidden(8, 8);
        std::size_t q = 0;
        for (int r = 0; r < 8; ++r) {
            for (int c = 0; c < 8; ++c) {
                if (filled(rng)) occ.place({r, c}, Occupant::data(q++));
                if (forbid(rng)) forbidden.insert({r, c});
            }
        }
        const Cell src{c8(rng), c8(rng)};
        Cell dst{c8(rng), c8(rng)};
        while (dst == src) dst = {c8(rng), c8(rng)};
        forbidden.erase(src);
        forbidden.erase(dst);
        const std::int64_t want = bellman_ford(occ, src, dst, forbidden, default_penalty);
        try {
            const Path p = find_path(occ, src, dst, forbidden);
            if (want != unreachable && p.search_cost == want) ++bf_ok;
        } catch (const NoPath&) {
            if (want == unreachable) ++bf_ok;
        }
    }

    std::uniform_int_distribution<int> c6(0, 5), obstacles(0, 8);
    std::size_t dom_ok = 0;
    for (int trial = 0; trial < 200; ++trial) {
        OccupancyState occ(6, 6, 8);
        const int k = obstacles(rng);
        for (int i = 0; i < k;) {
            const Cell cell{c6(rng), c6(rng)};
            if (!occ.empty(cell)) continue;
            occ.place(cell, Occupant::data(static_cast<std::size_t>(i++)));
        }
        const Cell src{c6(rng), c6(rng)};
        Cell dst{c6(rng), c6(rng)};
        while (dst == src) dst = {c6(rng), c6(rng)};
        // Penalty equal to the grid area: any detour is cheaper than one
        // more data cell.
        const Path p = find_path(occ, src, dst, {}, 36);
        Exhaustive ex{occ, dst, std::vector<char>(36, 0)};
        ex.on_path[occ.index(src)] = 1;
        ex.dfs(src, 0, 0);
        if (p.occupied_crossed == ex.best.first && p.hops == ex.best.second) ++dom_ok;
    }
    return {bf_ok == 1000 && dom_ok == 200, "Bellman-Ford agreement " + std::to_string(bf_ok) +
                                                "/1000 on 8x8; penalty dominance " + std::to_string(dom_ok) +
                                                "/200 on 6x6 with <= 8 obstacles"};
}

Outcome redundant_pass() {
    std::size_t ok = 0, total = 0, removed = 0;
    std::string first_bad;
    for (const auto& p : criterion_three_grid()) {
        ++total;
        const Circuit c = generate(p.bench);
        const std::string tag = c.name + " r=" + std::to_string(p.r) + " n=" + std::to_string(p.n);
        try {
            SchedulerConfig cfg;
            cfg.n_factories = p.n;
            const GridLayout g = prepare_layout(build_layout(p.bench.side, p.r), c, cfg);
            const Schedule before = schedule(c, g, cfg);
            const Schedule after = remove_redundant_moves(before);
            removed += before.ops.size() - std::min(before.ops.size(), after.ops.size());
            const bool good = after.ops.size() <= before.ops.size() && after.makespan <= before.makespan &&
                              validate_schedule(before).clean() && validate_schedule(after).clean();
            if (good) ++ok;
            else if (first_bad.empty()) first_bad = tag;
        } catch (const std::exception& e) {
            if (first_bad.empty()) first_bad = tag + ": " + e.what();
        }
    }

    // Seeded faults on a 3x3 grid (bus row 0 and column 0).
    const GridLayout g = build_layout(2, 2);
    Schedule overlap;
    overlap.circuit = {"h2", 2, {Gate::single(GateKind::H, 0), Gate::single(GateKind::H, 1)}};
    overlap.layout = g;
    overlap.initial = OccupancyState(g.rows, g.cols, 2);
    overlap.initial.place({1, 1}, Occupant::data(0));
    overlap.initial.place({2, 2}, Occupant::data(1));
    for (std::size_t q = 0; q < 2; ++q) {
        ScheduledOp op;
        op.gate = q;
        op.cells = {q == 0 ? Cell{1, 1} : Cell{2, 2}, Cell{1, 2}};
        op.duration = 6;
        overlap.ops.push_back(op);
    }
    const auto r1 = validate_schedule(overlap);
    Schedule starved;
    starved.circuit = {"t", 1, {Gate::single(GateKind::T, 0)}};
    starved.layout = g;
    starved.initial = OccupancyState(g.rows, g.cols, 1);
    starved.initial.place({1, 1}, Occupant::data(0));
    const auto r2 = validate_schedule(starved);
    const bool faults = r1.count(ViolationKind::Exclusivity) == 1 && r2.count(ViolationKind::Conservation) == 1;

    Outcome out{ok == total && faults, std::to_string(ok) + "/" + std::to_string(total) +
                                           " schedules non-increasing and clean (" + std::to_string(removed) +
                                           " ops removed); seeded exclusivity fault " +
                                           (r1.count(ViolationKind::Exclusivity) == 1 ? "detected" : "missed") +
                                           ", seeded conservation fault " +
                                           (r2.count(ViolationKind::Conservation) == 1 ? "detected" : "missed")};
    if (!first_bad.empty()) out.detail += "; first failure " + first_bad;
    return out;
}

Outcome baselines() {
    const auto compact = baseline_block(BlockKind::Compact, 100, 280, 1, 11);
    const auto inter = baseline_block(BlockKind::Intermediate, 100, 280, 1, 11);
    const auto fast = baseline_block(BlockKind::Fast, 100, 280, 1, 11);
    const double lb = lower_bound(280, 11, 1);
    const bool pass = compact.qubits == 303 && inter.qubits == 400 && fast.qubits == 406 && compact.time_d == lb &&
                      inter.time_d == lb && fast.time_d == lb;
    return {pass, "qubits " + std::to_string(compact.qubits) + "/" + std::to_string(inter.qubits) + "/" +
                      std::to_string(fast.qubits) + ", single-factory time " + fmt(compact.time_d) + "/" +
                      fmt(inter.time_d) + "/" + fmt(fast.time_d) + " vs lower bound " + fmt(lb)};
}

// Minimum strictly inside, or at an end with the curve monotone towards it.
bool u_or_monotone(const std::vector<double>& y, std::size_t argmin) {
    if (argmin > 0 && argmin + 1 < y.size()) return true;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (argmin == 0 && y[i] < y[i - 1]) return false;
        if (argmin + 1 == y.size() && y[i] > y[i - 1]) return false;
    }
    return true;
}

Outcome u_shape() {
    SweepSpec spec;
    spec.benchmarks = {{6, Model::Ising2D}};
    spec.r_values = {3, r_max};
    spec.n_msf_values = {1, 2, 3, 4, 5, 6, 7, 8};
    const auto rows = run_sweep(spec);
    Outcome out;
    std::size_t argmins[2] = {0, 0};
    for (std::size_t k = 0; k < 2; ++k) {
        std::vector<double> y;
        for (std::size_t i = 0; i < 8; ++i) {
            const auto& row = rows[k * 8 + i];
            if (!row.ok()) return {false, "sweep point failed: " + row.error};
            y.push_back(row.metrics.spacetime_incl);
        }
        argmins[k] = static_cast<std::size_t>(std::min_element(y.begin(), y.end()) - y.begin());
        const bool shape = u_or_monotone(y, argmins[k]);
        out.pass = out.pass && shape;
        out.detail += std::string(k ? "; " : "") + "r=" + std::to_string(rows[k * 8].metrics.r) + " spacetime_incl [";
        for (std::size_t i = 0; i < 8; ++i) out.detail += (i ? " " : "") + fmt(y[i]);
        out.detail += "] min at n=" + std::to_string(argmins[k] + 1) + (shape ? "" : " (not U/monotone)");
    }
    out.pass = out.pass && argmins[0] <= argmins[1];
    out.detail += "; ordering " + std::to_string(argmins[0] + 1) + " <= " + std::to_string(argmins[1] + 1) +
                  (argmins[0] <= argmins[1] ? " holds" : " violated");
    return out;
}

Outcome determinism(const LargeRun& first) {
    if (!first.ran) return {false, "criterion 4 run unavailable"};
    const Circuit c = generate({10, Model::Ising2D});
    const CompileResult again = compile(c, options(10, 4, 1));
    const bool same_schedule = jsonl(first.res.schedule) == jsonl(again.schedule);
    const bool same_metrics = to_json(first.res.metrics).dump(2) == to_json(again.metrics).dump(2);
    return {same_schedule && same_metrics, std::string("schedule JSONL ") + (same_schedule ? "identical" : "differs") +
                                               ", metrics JSON " + (same_metrics ? "identical" : "differs") + " (" +
                                               std::to_string(first.res.schedule.ops.size()) + " ops)"};
}

Outcome headline() {
    const Circuit c = generate({10, Model::Ising2D});
    const auto fast = baseline_block(BlockKind::Fast, 100, count_t_states(c), 1, 11);
    Outcome out;
    for (std::size_t r : {5u, 6u}) {
        const CompileResult res = compile(c, options(10, r, 1));
        const auto& m = res.metrics;
        const bool qubits_ok = 2 * m.qubits_incl <= fast.qubits;
        const bool time_ok = m.exec_time_d <= 2 * fast.time_d;
        out.pass = out.pass && qubits_ok && res.report.clean();
        out.detail += std::string(r == 5 ? "" : "; ") + "r=" + std::to_string(r) + ": qubits " +
                      std::to_string(m.qubits_incl) + " vs fast block " + std::to_string(fast.qubits) + " (" +
                      fmt(100.0 * static_cast<double>(m.qubits_incl) / static_cast<double>(fast.qubits)) +
                      "%, gate <= 50%), exec " + fmt(m.exec_time_d) + "d vs baseline " + fmt(fast.time_d) + "d (" +
                      fmt(m.exec_time_d / fast.time_d) + "x, informative <= 2x: " + (time_ok ? "met" : "not met") + ")";
    }
    return out;
}

}  // namespace

int main() {
    LargeRun large;
    criterion(1, "layout counts", 1, layout_counts);
    criterion(2, "benchmark gate counts", 1, table_one);
    criterion(3, "lower-bound inequality", 300, lower_bound_grid);
    criterion(4, "overhead target", 600, [&] { return overhead_target(large); });
    criterion(5, "router oracles", 120, router_oracles);
    criterion(6, "redundant-move pass", 300, redundant_pass);
    criterion(7, "baseline fidelity", 1, baselines);
    criterion(8, "factory-count U-shape", 600, u_shape);
    criterion(9, "determinism", 600, [&] { return determinism(large); });
    criterion(10, "headline qubit reduction", 600, headline);
    std::printf("%d criteria failed\n", failures);
    return failures ? 1 : 0;
}
