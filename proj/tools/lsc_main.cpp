// lsc: compile, sweep, bench and validate front end.
//
//   lsc compile <circuit.qasm | --gen model:L> --r R --factories K [--t-msf D] [--unit-cost] [--trace] [--out dir]
//   lsc sweep --bench ising:6 [--bench ...] --r 3,max --factories 1-8 [--csv f] [--svg-dir d] [--jobs N]
//   lsc bench --model heisenberg --L 10 [--steps S] [--out dir]
//   lsc validate <schedule.jsonl> <circuit.qasm | --gen model:L> --r R --factories K [--t-msf D] [--unit-cost]
//
// Exit codes: 0 ok, 1 error, 2 validation violations.

#include "lsc/lsc.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_violations = 2;

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("lsc");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("LSC_LOG");
    const std::string level = env ? env : "warn";
    spdlog::set_level(spdlog::level::from_str(level));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw lsc::InvalidArgument("bad " + what + " '" + s + "'");
    return v;
}

// "3", "max", "1-8", "1,2,4", "3,max"
std::vector<std::size_t> parse_list(const std::string& s, const std::string& what, bool allow_max) {
    std::vector<std::size_t> out;
    for (const auto& item : split(s, ',')) {
        if (allow_max && item == "max") {
            out.push_back(lsc::r_max);
        } else if (auto dash = item.find('-'); dash != std::string::npos) {
            const std::size_t lo = parse_count(item.substr(0, dash), what);
            const std::size_t hi = parse_count(item.substr(dash + 1), what);
            if (lo > hi) throw lsc::InvalidArgument("empty " + what + " range '" + item + "'");
            for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(parse_count(item, what));
        }
    }
    if (out.empty()) throw lsc::InvalidArgument("empty " + what + " list");
    return out;
}

// "ising:10" -> lattice spec
lsc::LatticeSpec parse_gen(const std::string& s, std::size_t steps) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw lsc::InvalidArgument("expected model:L, got '" + s + "'");
    const auto model = lsc::model_from_name(s.substr(0, colon));
    if (!model) throw lsc::InvalidArgument("unknown model '" + s.substr(0, colon) + "'");
    lsc::LatticeSpec spec;
    spec.model = *model;
    spec.side = parse_count(s.substr(colon + 1), "lattice side");
    spec.trotter_steps = steps;
    return spec;
}

struct CircuitArgs {
    std::string qasm;
    std::string gen;
    std::size_t steps = 1;
};

void add_circuit_options(CLI::App* cmd, CircuitArgs& a) {
    auto* file = cmd->add_option("circuit", a.qasm, "OpenQASM 2.0 input file");
    auto* gen = cmd->add_option("--gen", a.gen, "generate a benchmark instead, e.g. ising:10");
    file->excludes(gen);
    cmd->add_option("--steps", a.steps, "Trotter steps for --gen")->check(CLI::PositiveNumber);
}

lsc::Circuit load_circuit(const CircuitArgs& a) {
    if (!a.gen.empty()) return lsc::generate(parse_gen(a.gen, a.steps));
    if (a.qasm.empty()) throw CLI::RequiredError("circuit file or --gen");
    if (!fs::exists(a.qasm)) throw lsc::Error("file not found: " + a.qasm);
    return lsc::load_qasm_file(a.qasm);
}

struct LayoutArgs {
    std::string r = "4";
    std::size_t factories = 1;
    double t_msf = 11.0;
    std::string mapping = "grid2d";
};

void add_layout_options(CLI::App* cmd, LayoutArgs& a) {
    cmd->add_option("--r", a.r, "routing paths (2..2L+2, or max)")->required();
    cmd->add_option("--factories", a.factories, "distillation factories")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--t-msf", a.t_msf, "factory period in d")->capture_default_str();
    cmd->add_option("--mapping", a.mapping, "initial placement")
        ->check(CLI::IsMember({"grid2d", "snake1d"}))
        ->capture_default_str();
}

lsc::CompileOptions compile_options(const lsc::Circuit& c, const LayoutArgs& a) {
    lsc::CompileOptions opt;
    const std::size_t side = lsc::side_for(c.n_qubits);
    opt.side = side;
    opt.routing_paths = lsc::resolve_routing_paths(parse_list(a.r, "r", true).at(0), side);
    if (opt.routing_paths < 2 || opt.routing_paths > lsc::max_routing_paths(side)) {
        throw lsc::InvalidRoutingCount("r=" + std::to_string(opt.routing_paths) + " outside 2.." +
                                       std::to_string(lsc::max_routing_paths(side)) + " for L=" + std::to_string(side));
    }
    opt.scheduler.n_factories = a.factories;
    opt.scheduler.latency.distill_period = lsc::period_ticks(a.t_msf);
    opt.scheduler.mapping = a.mapping == "snake1d" ? lsc::MappingMode::Snake1D : lsc::MappingMode::Grid2D;
    return opt;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw lsc::Error("cannot write " + path.string());
    out << text;
}

std::string jsonl(const lsc::Schedule& s) {
    std::ostringstream ss;
    lsc::write_jsonl(ss, s);
    return ss.str();
}

void print_violations(const lsc::ValidationReport& r, const std::string& label) {
    for (const auto& v : r.violations) {
        std::cerr << label << ": " << lsc::violation_kind_name(v.kind);
        if (v.op) std::cerr << " (op " << *v.op << ")";
        std::cerr << ": " << v.message << '\n';
    }
}

// ---- compile ----------------------------------------------------------------

struct CompileArgs {
    CircuitArgs circuit;
    LayoutArgs layout;
    bool unit_cost = false;
    bool trace = false;
    bool keep_redundant = false;
    std::string out = ".";
};

int cmd_compile(const CompileArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const lsc::Circuit c = load_circuit(a.circuit);
    lsc::CompileOptions opt = compile_options(c, a.layout);
    opt.remove_redundant = !a.keep_redundant;
    spdlog::info("{}: {} qubits, {} gates, {} T states, L={}, r={}, factories={}", c.name, c.n_qubits,
                 c.gates.size(), lsc::count_t_states(c), *opt.side, opt.routing_paths, opt.scheduler.n_factories);

    const lsc::CompileResult res = lsc::compile(c, opt);
    spdlog::debug("layout:\n{}", lsc::render_ascii(res.layout));

    fs::create_directories(a.out);
    const fs::path dir(a.out);
    write_file(dir / (c.name + ".schedule.jsonl"), jsonl(res.schedule));
    write_file(dir / (c.name + ".metrics.json"), lsc::to_json(res.metrics).dump(2) + "\n");
    if (a.unit_cost) write_file(dir / (c.name + ".unit.schedule.jsonl"), jsonl(res.unit_schedule));
    if (a.trace) {
        write_file(dir / (c.name + ".trace.txt"), lsc::render_trace(res.schedule));
        if (a.unit_cost) write_file(dir / (c.name + ".unit.trace.txt"), lsc::render_trace(res.unit_schedule));
    }

    print_violations(res.report, "schedule");
    print_violations(res.unit_report, "unit-cost schedule");
    const std::size_t bad = res.report.violations.size() + res.unit_report.violations.size();
    const auto& m = res.metrics;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << c.name << ": exec " << lsc::format_number(m.exec_time_d) << "d, unit-cost "
              << lsc::format_number(m.unit_cost_time_d) << "d, lower bound " << lsc::format_number(m.lower_bound_d)
              << "d, qubits " << m.qubits_excl << "/" << m.qubits_incl << ", moves " << m.move_count
              << ", violations " << bad << " (" << lsc::format_number(std::round(secs * 100) / 100) << "s)\n";
    return bad ? exit_violations : exit_ok;
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
    std::vector<std::string> benches;
    std::size_t steps = 1;
    std::string r = "3,max";
    std::string factories = "1-8";
    double t_msf = 11.0;
    bool exclude_factories = false;
    bool keep_redundant = false;
    std::size_t jobs = 1;
    std::string csv;
    std::string svg_dir;
};

int cmd_sweep(const SweepArgs& a) {
    lsc::SweepSpec spec;
    for (const auto& b : a.benches) spec.benchmarks.push_back(parse_gen(b, a.steps));
    spec.r_values = parse_list(a.r, "r", true);
    spec.n_msf_values = parse_list(a.factories, "factory count", false);
    spec.t_msf_d = a.t_msf;
    spec.include_factories = !a.exclude_factories;
    spec.remove_redundant = !a.keep_redundant;
    spec.jobs = a.jobs;

    const auto rows = lsc::run_sweep(spec);
    std::size_t ok = 0;
    for (const auto& row : rows) {
        if (row.ok()) ++ok;
        else spdlog::warn("{} r={} n_MSF={}: {}", row.metrics.benchmark, row.metrics.r, row.metrics.n_msf, row.error);
    }

    if (a.csv.empty()) {
        lsc::write_csv(std::cout, rows);
    } else {
        if (auto parent = fs::path(a.csv).parent_path(); !parent.empty()) fs::create_directories(parent);
        std::ofstream out(a.csv, std::ios::binary);
        if (!out) throw lsc::Error("cannot write " + a.csv);
        lsc::write_csv(out, rows);
    }
    if (!a.svg_dir.empty()) {
        fs::create_directories(a.svg_dir);
        const fs::path dir(a.svg_dir);
        write_file(dir / "spacetime_vs_factories.svg", lsc::render_svg(lsc::spacetime_chart(rows, spec.include_factories)));
        write_file(dir / "exec_vs_qubits.svg", lsc::render_svg(lsc::tradeoff_chart(rows, spec.include_factories)));
    }
    std::cerr << ok << "/" << rows.size() << " sweep points succeeded\n";
    return ok ? exit_ok : exit_error;
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
    std::string model;
    std::size_t side = 0;
    std::size_t steps = 1;
    std::string out = ".";
};

int cmd_bench(const BenchArgs& a) {
    lsc::LatticeSpec spec;
    spec.model = *lsc::model_from_name(a.model);
    spec.side = a.side;
    spec.trotter_steps = a.steps;
    const lsc::Circuit c = lsc::generate(spec);

    fs::create_directories(a.out);
    write_file(fs::path(a.out) / (c.name + ".qasm"), lsc::to_qasm(c));

    const lsc::GateCounts counts = lsc::gate_counts(c);
    std::vector<lsc::GateKind> cols;
    for (lsc::GateKind k : lsc::all_gate_kinds) {
        if (counts.count(k) && counts.at(k)) cols.push_back(k);
    }
    std::printf("%-20s %7s", "benchmark", "qubits");
    for (auto k : cols) std::printf(" %7s", std::string(lsc::kind_name(k)).c_str());
    std::printf("\n%-20s %7zu", c.name.c_str(), c.n_qubits);
    for (auto k : cols) std::printf(" %7zu", counts.at(k));
    std::printf("\n");
    return exit_ok;
}

// ---- validate ---------------------------------------------------------------

struct ValidateArgs {
    std::string schedule;
    CircuitArgs circuit;
    LayoutArgs layout;
    bool unit_cost = false;
};

int cmd_validate(const ValidateArgs& a) {
    const lsc::Circuit c = load_circuit(a.circuit);
    const lsc::CompileOptions opt = compile_options(c, a.layout);
    std::ifstream in(a.schedule);
    if (!in) throw lsc::Error("file not found: " + a.schedule);

    lsc::Schedule s;
    s.circuit = c;
    s.layout = lsc::prepare_layout(lsc::build_layout(*opt.side, opt.routing_paths), c, opt.scheduler);
    s.initial = lsc::initial_mapping(c, s.layout, opt.scheduler.mapping);
    s.latency = a.unit_cost ? opt.scheduler.latency.as_unit_cost() : opt.scheduler.latency;
    s.ops = lsc::read_jsonl(in);
    s.recompute_makespan();

    const lsc::ValidationReport report = lsc::validate_schedule(s);
    print_violations(report, a.schedule);
    std::cout << a.schedule << ": " << s.ops.size() << " ops, makespan "
              << lsc::format_number(lsc::ticks_to_d(s.makespan)) << "d, violations " << report.violations.size()
              << '\n';
    return report.clean() ? exit_ok : exit_violations;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Lattice-surgery compiler for surface-code grid layouts"};
    app.require_subcommand(1);

    CompileArgs compile;
    auto* c = app.add_subcommand("compile", "schedule one circuit and write schedule, metrics and trace");
    add_circuit_options(c, compile.circuit);
    add_layout_options(c, compile.layout);
    c->add_flag("--unit-cost", compile.unit_cost, "also write the unit-cost schedule");
    c->add_flag("--trace", compile.trace, "write an ASCII occupancy trace");
    c->add_flag("--keep-redundant", compile.keep_redundant, "skip the redundant-move pass");
    c->add_option("--out", compile.out, "output directory")->capture_default_str();

    SweepArgs sweep;
    auto* s = app.add_subcommand("sweep", "sweep r and factory count over benchmarks, write CSV and SVG");
    s->add_option("--bench", sweep.benches, "benchmark as model:L (repeatable)")->required();
    s->add_option("--steps", sweep.steps, "Trotter steps")->check(CLI::PositiveNumber);
    s->add_option("--r", sweep.r, "routing paths, e.g. 3,max or 2-6")->capture_default_str();
    s->add_option("--factories", sweep.factories, "factory counts, e.g. 1-8 or 1,2,4")->capture_default_str();
    s->add_option("--t-msf", sweep.t_msf, "factory period in d")->capture_default_str();
    s->add_flag("--exclude-factories", sweep.exclude_factories, "chart spacetime without factory footprints");
    s->add_flag("--keep-redundant", sweep.keep_redundant, "skip the redundant-move pass");
    s->add_option("--jobs", sweep.jobs, "worker threads")->check(CLI::PositiveNumber);
    s->add_option("--csv", sweep.csv, "CSV output file (default stdout)");
    s->add_option("--svg-dir", sweep.svg_dir, "directory for SVG charts");

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "write a Trotter benchmark as QASM and print its gate counts");
    b->add_option("--model", bench.model, "ising, heisenberg or fermihubbard")
        ->required()
        ->check(CLI::IsMember({"ising", "heisenberg", "fermihubbard"}));
    b->add_option("--L", bench.side, "lattice side")->required();
    b->add_option("--steps", bench.steps, "Trotter steps")->check(CLI::PositiveNumber);
    b->add_option("--out", bench.out, "output directory")->capture_default_str();

    ValidateArgs validate;
    auto* v = app.add_subcommand("validate", "replay a schedule JSONL against its circuit and layout");
    v->add_option("schedule", validate.schedule, "schedule JSONL")->required();
    add_circuit_options(v, validate.circuit);
    add_layout_options(v, validate.layout);
    v->add_flag("--unit-cost", validate.unit_cost, "check durations against unit-cost latencies");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*c) return cmd_compile(compile);
        if (*s) return cmd_sweep(sweep);
        if (*b) return cmd_bench(bench);
        if (*v) return cmd_validate(validate);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_error;
    } catch (const lsc::InvalidSpec& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_error;
    } catch (const lsc::InvalidRoutingCount& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
