// Command-line front end: solve the planning LPs, emit policy calendars,
// simulate or de-randomize them, run experiment grids, and audit the demand
// assumptions. Exit codes: 0 ok, 2 validation error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "calrev/assumptions.hpp"
#include "calrev/bounds.hpp"
#include "calrev/common.hpp"
#include "calrev/derand.hpp"
#include "calrev/experiment.hpp"
#include "calrev/lp.hpp"
#include "calrev/policies.hpp"

namespace {

using namespace calrev;

struct InstanceArgs {
    std::string fixture;
    std::string path;

    Instance load() const {
        if (!fixture.empty() && !path.empty())
            throw ValidationError("give either --fixture or --instance, not both");
        if (!fixture.empty()) return load_fixture(fixture).instance;
        if (!path.empty()) return load_instance_file(path);
        throw ValidationError("an instance is required (--fixture or --instance)");
    }
};

void add_instance_args(CLI::App* cmd, InstanceArgs& args) {
    cmd->add_option("--fixture", args.fixture, "bundled fixture name");
    cmd->add_option("--instance", args.path, "instance JSON file");
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file '" + out_path + "'");
    out << text;
}

LinearProgram build_named_lp(const Instance& inst, const std::string& which) {
    if (which == "cdlp-n") return build_cdlp_n(inst);
    if (which == "cdlp-s") return build_cdlp_s(inst);
    if (which == "dlp-s") return build_dlp_s(inst);
    if (which == "dlp-n") return build_dlp_n(inst);
    if (which == "auto") {
        if (inst.n_items == 1)
            return inst.stationary ? build_dlp_s(inst) : build_dlp_n(inst);
        return inst.stationary ? build_cdlp_s(inst) : build_cdlp_n(inst);
    }
    throw ValidationError("unknown LP '" + which + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"Static price/assortment calendar planning toolkit"};
    app.require_subcommand(1);

    InstanceArgs inst_args;
    std::string policy = "lp-sol", mode = "static", out_path, lp_name = "auto";
    std::string dump_lp_path, trace_path, spec_path, calendar_path, log_path;
    uint64_t seed = 0;
    int reps = 10000, threads = 1;
    double epsilon = 0.1;
    long long k_max = 10000;

    auto* solve_cmd = app.add_subcommand("solve", "build and solve a planning LP");
    add_instance_args(solve_cmd, inst_args);
    solve_cmd->add_option("--lp", lp_name, "cdlp-n|cdlp-s|dlp-s|dlp-n|auto");
    solve_cmd->add_option("--dump-lp", dump_lp_path, "write the LP in text format");

    auto* plan_cmd = app.add_subcommand("plan", "emit a policy calendar as JSON");
    add_instance_args(plan_cmd, inst_args);
    plan_cmd->add_option("--policy", policy, "policy name")->required();
    plan_cmd->add_option("--seed", seed, "random seed");
    plan_cmd->add_option("--mode", mode, "static|dynamic");
    plan_cmd->add_option("--epsilon", epsilon, "de-randomization epsilon");
    plan_cmd->add_option("--k-max", k_max, "sample-count clamp");
    plan_cmd->add_option("--out", out_path, "output path (default stdout)");

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo evaluation of a policy");
    add_instance_args(sim_cmd, inst_args);
    sim_cmd->add_option("--policy", policy, "policy name");
    sim_cmd->add_option("--calendar", calendar_path, "calendar JSON file to evaluate");
    sim_cmd->add_option("--reps", reps, "replications");
    sim_cmd->add_option("--seed", seed, "random seed");
    sim_cmd->add_option("--mode", mode, "static|dynamic");
    sim_cmd->add_option("--threads", threads, "worker threads");
    sim_cmd->add_option("--trace", trace_path, "per-replication CSV trace");
    sim_cmd->add_option("--out", out_path, "output path (default stdout)");

    auto* der_cmd = app.add_subcommand("derandomize", "fix a randomized policy period by period");
    add_instance_args(der_cmd, inst_args);
    der_cmd->add_option("--policy", policy, "randomized policy to fix")->required();
    der_cmd->add_option("--epsilon", epsilon, "target accuracy");
    der_cmd->add_option("--k-max", k_max, "sample-count clamp");
    der_cmd->add_option("--seed", seed, "random seed");
    der_cmd->add_option("--mode", mode, "static|dynamic");
    der_cmd->add_option("--log", log_path, "per-period decision log (JSON lines)");
    der_cmd->add_option("--out", out_path, "output path (default stdout)");

    auto* bench_cmd = app.add_subcommand("bench", "run an experiment grid to CSV");
    bench_cmd->add_option("--spec", spec_path, "experiment spec JSON")->required();
    bench_cmd->add_option("--out", out_path, "CSV output path (overrides spec)");
    bench_cmd->add_option("--threads", threads, "worker threads (overrides spec)");
    bench_cmd->add_option("--seed", seed, "seed (overrides spec)");

    std::string fixture_name;
    auto* fix_cmd = app.add_subcommand("fixtures", "list bundled fixtures or show one");
    fix_cmd->add_option("name", fixture_name, "fixture to describe");

    auto* check_cmd = app.add_subcommand("check-assumptions", "audit the demand assumptions");
    add_instance_args(check_cmd, inst_args);

    CLI11_PARSE(app, argc, argv);

    if (solve_cmd->parsed()) {
        Instance inst = inst_args.load();
        auto lp = build_named_lp(inst, lp_name);
        if (!dump_lp_path.empty()) write_output(dump_lp_path, lp_format_text(lp));
        auto sol = solve_lp(lp);
        std::ostringstream os;
        os.precision(12);
        os << "objective " << sol.objective << "\n";
        for (std::size_t j = 0; j < sol.x.size(); ++j)
            if (sol.x[j] > kSupportTol) os << "  " << lp.var_names[j] << " = " << sol.x[j] << "\n";
        if (lp.kind == LpKind::CdlpN || lp.kind == LpKind::CdlpS) {
            auto r = item_contributions(sol, inst);
            for (std::size_t i = 0; i < r.size(); ++i)
                os << "  r*_" << i << " = " << r[i] << "\n";
        }
        std::cout << os.str();
        return 0;
    }
    if (plan_cmd->parsed()) {
        Instance inst = inst_args.load();
        PolicyOptions popt;
        popt.seed = seed;
        popt.mode = parse_mode(mode);
        popt.epsilon = epsilon;
        popt.k_max = k_max;
        auto outcome = make_policy(policy, inst, popt);
        for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
        if (!outcome.calendar)
            throw ValidationError("policy '" + policy + "' does not produce a calendar");
        write_output(out_path, calendar_to_json(*outcome.calendar, inst, policy,
                                                outcome.opt_lp));
        return 0;
    }
    if (sim_cmd->parsed()) {
        Instance inst = inst_args.load();
        RandomizedCalendar cal;
        if (!calendar_path.empty()) {
            std::ifstream in(calendar_path);
            if (!in) throw ValidationError("cannot open calendar file");
            std::ostringstream buf;
            buf << in.rdbuf();
            cal = calendar_from_json(buf.str(), inst);
        } else {
            PolicyOptions popt;
            popt.seed = seed;
            popt.mode = parse_mode(mode);
            popt.epsilon = epsilon;
            popt.k_max = k_max;
            auto outcome = make_policy(policy, inst, popt);
            if (!outcome.calendar)
                throw ValidationError("policy '" + policy + "' does not produce a calendar");
            cal = *outcome.calendar;
        }
        SimOptions sopt;
        sopt.replications = reps;
        sopt.seed = seed;
        sopt.mode = parse_mode(mode);
        sopt.threads = threads;
        sopt.trace_csv_path = trace_path;
        write_output(out_path, stats_to_json(simulate(cal, inst, sopt)));
        return 0;
    }
    if (der_cmd->parsed()) {
        Instance inst = inst_args.load();
        PolicyOptions popt;
        popt.seed = seed;
        popt.mode = parse_mode(mode);
        auto outcome = make_policy(policy, inst, popt);
        if (!outcome.calendar)
            throw ValidationError("policy '" + policy + "' does not produce a calendar");
        DerandConfig cfg;
        cfg.epsilon = epsilon;
        cfg.seed = seed;
        cfg.mode = parse_mode(mode);
        cfg.k_max = k_max;
        auto res = derandomize(*outcome.calendar, inst, outcome.opt_lp, cfg);
        if (res.sample_count_clamped)
            std::cerr << "warning: sample count clamped to " << res.samples_per_estimate
                      << "; the epsilon guarantee is void\n";
        if (!log_path.empty()) write_output(log_path, res.decision_log_json());
        write_output(out_path, calendar_to_json(res.calendar, inst,
                                                policy + "+derand", outcome.opt_lp));
        return 0;
    }
    if (bench_cmd->parsed()) {
        std::ifstream in(spec_path);
        if (!in) throw ValidationError("cannot open spec file '" + spec_path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        auto spec = parse_experiment_spec(buf.str());
        if (bench_cmd->count("--out")) spec.out_path = out_path;
        if (bench_cmd->count("--threads")) spec.threads = threads;
        if (bench_cmd->count("--seed")) spec.seed = seed;
        std::string csv = run_experiment(spec);
        if (spec.out_path.empty()) std::cout << csv;
        return 0;
    }
    if (fix_cmd->parsed()) {
        if (fixture_name.empty()) {
            for (const auto& name : fixture_names()) std::cout << name << "\n";
            return 0;
        }
        auto f = load_fixture(fixture_name);
        std::cout << f.name << ": " << f.note << "\n";
        std::cout << "  items " << f.instance.n_items << ", horizon "
                  << f.instance.horizon << ", assortments " << f.instance.family.size()
                  << "\n";
        for (const auto& [key, value] : f.expected)
            std::cout << "  expected " << key << " = " << value << "\n";
        return 0;
    }
    if (check_cmd->parsed()) {
        Instance inst = inst_args.load();
        auto report = check_assumptions(inst);
        auto verdict = [](bool checked, bool ok) {
            return !checked ? "skipped (too large)" : ok ? "pass" : "fail";
        };
        std::cout << "substitutability:  "
                  << verdict(report.substitutability_checked,
                             report.substitutability.empty())
                  << " (" << report.substitutability.size() << " violations)\n";
        std::cout << "truncation-ratio:  "
                  << verdict(report.truncation_checked, report.truncation.empty()) << " ("
                  << report.truncation.size() << " violations)\n";
        if (inst.n_items == 1)
            std::cout << "cdf-comparability: "
                      << verdict(report.comparability_checked,
                                 report.comparability.empty())
                      << " (" << report.comparability.size() << " violations)\n";
        auto g = guarantees(inst);
        std::cout << "delta_apx " << g.delta_apx << ", poisson floor " << g.poisson_floor
                  << ", reservation delta " << g.reservation_delta << "\n";
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
