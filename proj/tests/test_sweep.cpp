#include "lsc/sweep.hpp"
#include "lsc/trace.hpp"

#include <gtest/gtest.h>

#include <regex>
#include <sstream>

using namespace lsc;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.benchmarks = {{2, Model::Ising2D}, {2, Model::FermiHubbard2D}};
    spec.r_values = {2, r_max};
    spec.n_msf_values = {1, 2};
    return spec;
}

std::string csv_of(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    write_csv(out, rows);
    return out.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

// Tag balance check: every opened element is closed in order.
bool well_formed_xml(const std::string& doc) {
    std::vector<std::string> stack;
    const std::regex tag(R"(<(/?)([A-Za-z][\w:-]*)[^>]*?(/?)>)");
    for (auto it = std::sregex_iterator(doc.begin(), doc.end(), tag); it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        if (m[1] == "/") {
            if (stack.empty() || stack.back() != m[2]) return false;
            stack.pop_back();
        } else if (m[3] != "/") {
            stack.push_back(m[2]);
        }
    }
    return stack.empty() && doc.rfind("<?xml", 0) == 0;
}

}  // namespace

TEST(Csv, GoldenHeader) {
    EXPECT_EQ(csv_header,
              "benchmark,L,r,n_MSF,t_MSF_d,qubits_excl,qubits_incl,exec_time_d,unit_cost_time_d,lower_bound_d,"
              "spacetime_excl,spacetime_incl,cpi_d,error");
}

TEST(Sweep, RowsInSpecOrderAndReparseable) {
    const auto rows = run_sweep(small_spec());
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_EQ(rows[0].metrics.benchmark, "ising_2x2");
    EXPECT_EQ(rows[0].metrics.r, 2u);
    EXPECT_EQ(rows[2].metrics.r, 6u);
    EXPECT_EQ(rows[3].metrics.n_msf, 2u);
    EXPECT_EQ(rows[4].metrics.benchmark, "fermihubbard_2x2");

    const auto lines = split(csv_of(rows), '\n');
    ASSERT_EQ(lines.size(), rows.size() + 2);  // header + rows + trailing empty
    for (std::size_t i = 1; i <= rows.size(); ++i) {
        const auto f = split(lines[i], ',');
        ASSERT_EQ(f.size(), 14u);
        ASSERT_TRUE(f[13].empty()) << f[13];
        const double qex = std::stod(f[5]), qin = std::stod(f[6]), exec = std::stod(f[7]), unit = std::stod(f[8]);
        const double lb = std::stod(f[9]), stex = std::stod(f[10]), stin = std::stod(f[11]);
        EXPECT_DOUBLE_EQ(stex, qex * exec);
        EXPECT_DOUBLE_EQ(stin, qin * exec);
        EXPECT_GE(exec, lb);
        EXPECT_LE(unit, exec);
        EXPECT_DOUBLE_EQ(qin - qex, 11 * std::stod(f[3]));
    }
}

TEST(Sweep, DeterministicAcrossRunsAndWorkers) {
    SweepSpec spec = small_spec();
    const std::string serial = csv_of(run_sweep(spec));
    EXPECT_EQ(serial, csv_of(run_sweep(spec)));
    spec.jobs = 4;
    EXPECT_EQ(serial, csv_of(run_sweep(spec)));
}

TEST(Sweep, FailedPointsAreFlagged) {
    SweepSpec spec;
    spec.benchmarks = {{2, Model::Ising2D}};
    spec.r_values = {2};
    spec.n_msf_values = {1, 40};
    const auto rows = run_sweep(spec);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_TRUE(rows[0].ok());
    EXPECT_FALSE(rows[1].ok());
    const auto lines = split(csv_of(rows), '\n');
    EXPECT_EQ(split(lines[2], ',').size(), 14u);
    EXPECT_FALSE(split(lines[2], ',')[13].empty());
}

TEST(Sweep, RejectsBadSpecs) {
    SweepSpec spec = small_spec();
    spec.r_values = {7};
    EXPECT_THROW(run_sweep(spec), InvalidRoutingCount);
    spec = small_spec();
    spec.n_msf_values.clear();
    EXPECT_THROW(run_sweep(spec), InvalidArgument);
    spec = small_spec();
    spec.t_msf_d = 0.3;
    EXPECT_THROW(run_sweep(spec), InvalidArgument);
}

TEST(Sweep, TFreeCircuitIgnoresFactoryPeriod) {
    const Circuit ghz{"ghz", 4, {Gate::single(GateKind::H, 0), Gate::cnot(0, 1), Gate::cnot(1, 2), Gate::cnot(2, 3)}};
    const LatticeSpec where{2, Model::Ising2D};
    SweepSpec fast;
    fast.t_msf_d = 5;
    SweepSpec slow;
    slow.t_msf_d = 30;
    const auto a = run_sweep_point(ghz, where, 4, 1, fast);
    const auto b = run_sweep_point(ghz, where, 4, 1, slow);
    ASSERT_TRUE(a.ok() && b.ok());
    EXPECT_DOUBLE_EQ(a.metrics.spacetime_incl, b.metrics.spacetime_incl);
    EXPECT_DOUBLE_EQ(a.metrics.exec_time_d, b.metrics.exec_time_d);
}

TEST(Svg, WellFormedAndBackedByRows) {
    const auto rows = run_sweep(small_spec());
    const std::string svg = render_svg(spacetime_chart(rows, true));
    EXPECT_TRUE(well_formed_xml(svg));
    EXPECT_NE(svg.find("viewBox=\"0 0 960 600\""), std::string::npos);
    // One legend entry per (benchmark, r) present in the rows.
    for (const auto& row : rows) {
        const std::string label = row.metrics.benchmark + " r=" + std::to_string(row.metrics.r);
        EXPECT_NE(svg.find(">" + label + "<"), std::string::npos) << label;
    }
    std::size_t circles = 0;
    for (auto pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++circles;
    EXPECT_EQ(circles, rows.size());

    const std::string scatter = render_svg(tradeoff_chart(rows, false));
    EXPECT_TRUE(well_formed_xml(scatter));
    EXPECT_EQ(scatter.find("<polyline"), std::string::npos);
}

TEST(Svg, EscapesText) {
    Chart chart;
    chart.title = "a<b & \"c\"";
    chart.series.push_back({"s", {{0, 1}, {1, 2}}});
    const std::string svg = render_svg(chart);
    EXPECT_NE(svg.find("a&lt;b &amp; &quot;c&quot;"), std::string::npos);
    EXPECT_TRUE(well_formed_xml(svg));
    EXPECT_TRUE(well_formed_xml(render_svg(Chart{})));
}

TEST(Trace, SnapshotsEveryWholeStep) {
    const Circuit c{"t", 1, {Gate::single(GateKind::T, 0)}};
    CompileOptions opt;
    opt.routing_paths = 2;
    const CompileResult res = compile(c, opt);
    const std::string trace = render_trace(res.schedule);
    const Tick ticks = res.schedule.makespan;
    std::size_t frames = 0;
    for (auto pos = trace.find("t="); pos != std::string::npos; pos = trace.find("t=", pos + 1)) ++frames;
    EXPECT_EQ(frames, static_cast<std::size_t>(ticks / 2 + 1));
    EXPECT_NE(trace.find("t=0d\n"), std::string::npos);
    EXPECT_NE(trace.find("q0"), std::string::npos);
    EXPECT_NE(trace.find("m0"), std::string::npos);
}
