// qarith: verify, count, sweep and estimate quantum arithmetic circuits.
//
// Exit codes: 0 all requested checks pass, 1 a verification or claim check
// failed, 2 usage error (bad flag, unknown algorithm, unreadable input,
// unwritable output, simulator limit).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "qarith/analysis.hpp"
#include "qarith/catalog.hpp"
#include "qarith/claims.hpp"
#include "qarith/physical.hpp"
#include "qarith/report.hpp"
#include "qarith/simulate.hpp"

using namespace qarith;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Opened before any work starts so a bad path fails fast.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw UsageError("cannot write " + path);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty()) throw UsageError("empty algorithm list");
    return out;
}

PhysicalParams params_from(const std::string& path) { return path.empty() ? PhysicalParams{} : load_params(path); }

void write_rows(Output& out, const std::vector<SweepRecord>& rows, const std::string& format) {
    if (format == "json") write_json(out.stream(), rows);
    else write_csv(out.stream(), rows);
}

struct Options {
    std::string op_class;
    std::string algo;
    std::size_t n = 0;
    std::size_t n_min = 0;
    std::size_t n_max = 0;
    std::string grid = "log";
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = kDefaultSeed;
    std::string params;
    std::string in;
    std::string mode;
    std::string metric;
    std::string only;
};

int cmd_list(const Options& o) {
    Output out(o.out);
    if (o.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& e : catalog()) {
            j.push_back({{"op_class", to_string(e.op_class)}, {"algorithm", e.algorithm}, {"parameters", e.parameters}});
        }
        out.stream() << j.dump(2) << "\n";
        return 0;
    }
    out.stream() << "op_class,algorithm,parameters\n";
    for (const auto& e : catalog()) out.stream() << to_string(e.op_class) << "," << e.algorithm << "," << e.parameters << "\n";
    return 0;
}

int cmd_verify(const Options& o) {
    const OpClass op = parse_op_class(o.op_class);
    const std::size_t lo = o.n_min ? o.n_min : min_width(op);
    if (o.n_max < lo) throw UsageError("--n-max must be at least " + std::to_string(lo));
    for (std::size_t n = lo; n <= o.n_max; ++n) workload_builder(op, o.algo, n);
    Output out(o.out);
    VerifyOptions opt;
    opt.seed = o.seed;
    bool ok = true;
    std::uint64_t cases = 0;
    for (std::size_t n = lo; n <= o.n_max; ++n) {
        VerifyResult r;
        try {
            r = verify_workload(op, o.algo, n, opt);
        } catch (const SimulationError& e) {
            throw UsageError(std::string("limit exceeded at n=") + std::to_string(n) + ": " + e.what());
        } catch (const std::out_of_range& e) {
            throw UsageError(std::string("limit exceeded at n=") + std::to_string(n) + ": " + e.what());
        }
        cases += r.cases;
        out.stream() << (r.passed() ? "PASS " : "FAIL ") << o.op_class << "/" << o.algo << " n=" << n << " "
                     << r.method << " " << r.cases << " cases";
        if (r.method.rfind("random", 0) == 0) out.stream() << " (seed " << opt.seed << ")";
        out.stream() << "\n";
        if (!r.passed()) {
            out.stream() << "  " << r.failures << " mismatches; first: " << r.counterexample << "\n";
            ok = false;
        }
    }
    out.stream() << (ok ? "PASS" : "FAIL") << " " << cases << " cases\n";
    return ok ? 0 : 1;
}

int cmd_sweep(const Options& o) {
    const OpClass op = parse_op_class(o.op_class);
    const PhysicalParams p = params_from(o.params);
    std::vector<std::uint64_t> grid;
    if (o.grid == "pow2") grid = pow2_grid(o.n_min, o.n_max);
    else grid = log_grid(o.n_min, o.n_max);
    const auto algos = split_list(o.algo);
    for (const auto& a : algos) {
        for (std::uint64_t n : grid) workload_builder(op, a, n);
    }
    Output out(o.out);
    write_rows(out, sweep(op, algos, grid, p), o.format);
    return 0;
}

int cmd_pareto(const Options& o) {
    const OpClass op = parse_op_class(o.op_class);
    const PhysicalParams p = params_from(o.params);
    workload_builder(op, o.algo, o.n);
    Output out(o.out);
    const auto rows = pareto_records(op, o.algo, o.n, p);
    if (rows.empty()) std::cerr << "no feasible configuration: every factory count needs a distance above 51\n";
    write_rows(out, rows, o.format);
    return 0;
}

int cmd_fit(const Options& o) {
    std::ifstream f(o.in);
    if (!f) throw UsageError("cannot read " + o.in);
    std::stringstream ss;
    ss << f.rdbuf();
    const FitMode mode = parse_fit_mode(o.mode);
    const auto rows = parse_records(ss.str());
    Output out(o.out);
    out.stream() << fit_report(rows, mode, o.metric.empty() ? default_metric(mode) : o.metric);
    return 0;
}

int cmd_claims(const Options& o) {
    const PhysicalParams p = params_from(o.params);
    std::vector<std::string> only;
    if (!o.only.empty()) only = split_list(o.only);
    for (const auto& id : only) {
        const auto& all = acceptance_criteria();
        if (std::find(all.begin(), all.end(), id) == all.end()) throw UsageError("unknown claim " + id);
    }
    Output out(o.out);
    const auto checks = run_claims(p, o.seed, only);
    out.stream() << (o.format == "json" ? claims_json(checks) : claims_markdown(checks));
    return all_passed(checks) ? 0 : 1;
}

int cmd_dump(const Options& o) {
    const OpClass op = parse_op_class(o.op_class);
    const Circuit c = build_workload(op, o.algo, o.n);
    Output out(o.out);
    out.stream() << dump(c);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qarith: quantum arithmetic circuits, oracle checks and resource estimates"};
    app.require_subcommand(1);
    Options o;

    auto add_workload = [&](CLI::App* c, bool need_n) {
        c->add_option("--op-class", o.op_class, "inplace_adder, outofplace_adder, const_adder, subtractor, "
                                                "multiplier, divider or modexp")
            ->required();
        c->add_option("--algo", o.algo, "algorithm name as printed by `list`")->required();
        if (need_n) c->add_option("--n", o.n, "operand width")->required()->check(CLI::PositiveNumber);
    };
    auto add_output = [&](CLI::App* c, std::vector<std::string> formats) {
        c->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
        c->add_option("--out", o.out, "output file (default stdout)");
    };

    auto* list = app.add_subcommand("list", "print every op class and algorithm with its parameter slots");
    add_output(list, {"csv", "json"});

    auto* verify = app.add_subcommand("verify", "compare a circuit with classical arithmetic for n up to --n-max");
    add_workload(verify, false);
    verify->add_option("--n-max", o.n_max, "largest width to check")->required();
    verify->add_option("--n-min", o.n_min, "smallest width (default: smallest valid)");
    verify->add_option("--seed", o.seed, "seed for sampled inputs");
    verify->add_option("--out", o.out, "output file (default stdout)");

    auto* sweep_cmd = app.add_subcommand("sweep", "logical and single-factory physical counts over a width grid");
    sweep_cmd->add_option("--op-class", o.op_class, "op class")->required();
    sweep_cmd->add_option("--algo", o.algo, "algorithm, or a comma-separated list")->required();
    sweep_cmd->add_option("--n-min", o.n_min, "first grid width (>= 3 on the log grid)")->required();
    sweep_cmd->add_option("--n-max", o.n_max, "last grid width")->required();
    sweep_cmd->add_option("--grid", o.grid, "log: n_min * 2^(k/4); pow2: powers of two")
        ->check(CLI::IsMember({"log", "pow2"}));
    sweep_cmd->add_option("--params", o.params, "physical parameter file");
    add_output(sweep_cmd, {"csv", "json"});

    auto* pareto = app.add_subcommand("pareto", "qubits/runtime Pareto frontier over the factory count");
    add_workload(pareto, true);
    pareto->add_option("--params", o.params, "physical parameter file");
    add_output(pareto, {"csv", "json"});

    auto* fit = app.add_subcommand("fit", "slope, tipping point or window model from sweep output");
    fit->add_option("--in", o.in, "sweep output (CSV or JSON)")->required();
    fit->add_option("--mode", o.mode, "slope, tipping or window")->required()->check(
        CLI::IsMember({"slope", "tipping", "window"}));
    fit->add_option("--metric", o.metric, "cost column (default: toffoli_count for tipping, t_count otherwise)");
    fit->add_option("--out", o.out, "output file (default stdout)");

    auto* claims = app.add_subcommand("claims", "run the acceptance claim checks");
    claims->add_option("--params", o.params, "physical parameter file");
    claims->add_option("--seed", o.seed, "seed for sampled inputs");
    claims->add_option("--only", o.only, "comma-separated claim ids");
    claims->add_option("--format", o.format, "md or json")->check(CLI::IsMember({"md", "json"}));
    claims->add_option("--out", o.out, "output file (default stdout)");
    claims->callback([&] {
        if (o.format == "csv") o.format = "md";
    });

    auto* dump_cmd = app.add_subcommand("dump", "print the gate list of one circuit");
    add_workload(dump_cmd, true);
    dump_cmd->add_option("--out", o.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*list) return cmd_list(o);
        if (*verify) return cmd_verify(o);
        if (*sweep_cmd) return cmd_sweep(o);
        if (*pareto) return cmd_pareto(o);
        if (*fit) return cmd_fit(o);
        if (*claims) return cmd_claims(o);
        if (*dump_cmd) return cmd_dump(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
