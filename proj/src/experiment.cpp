#include "calrev/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "calrev/bounds.hpp"
#include "calrev/common.hpp"
#include "calrev/lp.hpp"
#include "calrev/policies.hpp"

namespace calrev {

using nlohmann::json;

namespace {

// Seed salt separating de-randomization sampling from evaluation draws.
constexpr uint64_t kDerandSalt = 0x5eedD17AULL;

std::string fmt(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

LpSolution solve_cdlp(const Instance& inst, bool stationary_form) {
    return stationary_form ? solve_lp(build_cdlp_s(inst)) : solve_lp(build_cdlp_n(inst));
}

}  // namespace

PolicyOutcome make_policy(const std::string& name, const Instance& inst,
                          const PolicyOptions& opt) {
    PolicyOutcome out;
    out.policy = name;

    auto ub_solution = [&] { return solve_cdlp(inst, inst.stationary); };

    if (name == "lp-ub") {
        out.opt_lp = ub_solution().objective;
        out.exact_value = out.opt_lp;
        return out;
    }
    if (name == "myopic") {
        out.opt_lp = ub_solution().objective;
        out.calendar = myopic_policy(inst).as_randomized();
        return out;
    }
    if (name == "lp-sol" || name == "alg1") {
        if (name == "alg1" && !inst.stationary)
            throw ValidationError("alg1 requires a stationary instance");
        auto sol = ub_solution();
        out.opt_lp = sol.objective;
        out.calendar = lp_solution_policy(sol, inst);
        return out;
    }
    if (name == "alg2" || name == "alg3") {
        auto sol = solve_lp(build_cdlp_n(inst));
        out.opt_lp = sol.objective;
        out.calendar = name == "alg2"
                           ? nonstationary_threshold_policy(sol, inst)
                           : large_inventory_policy(sol, inst, &out.warnings);
        return out;
    }
    if (name == "alg5") {
        HighLowOptions hl;
        hl.seed = opt.seed;
        hl.state_cap = opt.state_cap;
        out.calendar = high_low_calendar(inst, hl).as_randomized();
        out.opt_lp = solve_lp(build_dlp_s(inst)).objective;
        return out;
    }
    if (name == "alg6") {
        out.calendar = bid_price_calendar(inst).as_randomized();
        out.opt_lp = solve_lp(build_dlp_n(inst)).objective;
        return out;
    }
    if (name == "derand-lp" || name == "derand-alg2" || name == "derand-alg3") {
        std::string base = name == "derand-lp" ? "lp-sol" : name.substr(7);
        auto inner = make_policy(base, inst, opt);
        DerandConfig cfg;
        cfg.epsilon = opt.epsilon;
        cfg.seed = mix64(opt.seed ^ kDerandSalt);
        cfg.mode = opt.mode;
        cfg.k_max = opt.k_max;
        cfg.state_cap = opt.state_cap;
        auto res = derandomize(*inner.calendar, inst, inner.opt_lp, cfg);
        out.opt_lp = inner.opt_lp;
        out.calendar = res.calendar.as_randomized();
        if (res.sample_count_clamped)
            out.warnings.push_back(name + ": sample count clamped to " +
                                   std::to_string(res.samples_per_estimate) +
                                   "; the epsilon guarantee is void");
        return out;
    }
    if (name == "optimal-dp") {
        out.opt_lp = ub_solution().objective;
        EvalOptions eo;
        eo.state_cap = opt.state_cap;
        out.exact_value = optimal_dp(inst, opt.mode, eo).root_value;
        return out;
    }
    throw ValidationError("unknown policy '" + name + "'");
}

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("spec JSON parse error: ") + e.what());
    }
    try {
        ExperimentSpec spec;
        if (j.contains("fixture")) spec.fixture = j.at("fixture").get<std::string>();
        if (j.contains("instance")) spec.instance_path = j.at("instance").get<std::string>();
        if (j.contains("family")) {
            spec.synthetic = true;
            const auto& fam = j.at("family");
            spec.setting = fam.at("setting").get<std::string>() == "stationary"
                               ? DemandSetting::Stationary
                               : DemandSetting::NonStationary;
            spec.price_diff = fam.at("price_diff").get<std::string>() == "small"
                                  ? PriceDiff::Small
                                  : PriceDiff::Big;
        }
        int sources = (!spec.fixture.empty() ? 1 : 0) +
                      (!spec.instance_path.empty() ? 1 : 0) + (spec.synthetic ? 1 : 0);
        if (sources != 1)
            throw ValidationError("spec needs exactly one of fixture/instance/family");
        if (j.contains("alphas")) spec.alphas = j.at("alphas").get<std::vector<double>>();
        if (j.contains("v0_pairs")) {
            spec.v0_pairs.clear();
            for (const auto& p : j.at("v0_pairs"))
                spec.v0_pairs.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        }
        spec.policies = j.at("policies").get<std::vector<std::string>>();
        for (const auto& p : spec.policies)
            if (std::find(kPolicyNames.begin(), kPolicyNames.end(), p) ==
                kPolicyNames.end())
                throw ValidationError("unknown policy '" + p + "' in spec");
        spec.replications = j.value("reps", 10000);
        spec.seed = j.value("seed", static_cast<uint64_t>(0));
        spec.mode = parse_mode(j.value("mode", std::string("static")));
        spec.epsilon = j.value("epsilon", 0.1);
        spec.k_max = j.value("k_max", static_cast<long long>(10000));
        spec.threads = j.value("threads", 1);
        spec.out_path = j.value("out", "");
        return spec;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("spec config error: ") + e.what());
    }
}

std::string run_experiment(const ExperimentSpec& spec) {
    struct Cell {
        double alpha = 1.0, v0l = 0.0, v0h = 0.0;
        std::string policy;
        std::string row;
    };
    std::vector<Cell> cells;
    if (spec.synthetic) {
        for (const auto& [v0l, v0h] : spec.v0_pairs)
            for (double alpha : spec.alphas)
                for (const auto& policy : spec.policies)
                    cells.push_back({alpha, v0l, v0h, policy, ""});
    } else {
        for (const auto& policy : spec.policies) cells.push_back({1.0, 0.0, 0.0, policy, ""});
    }

    auto run_cell = [&](Cell& cell) {
        Instance inst;
        if (spec.synthetic) {
            inst = synthetic_instance(spec.setting, spec.price_diff, cell.v0l, cell.v0h,
                                      cell.alpha);
        } else if (!spec.fixture.empty()) {
            inst = load_fixture(spec.fixture).instance;
        } else {
            inst = load_instance_file(spec.instance_path);
        }
        std::ostringstream row;
        row << inst.name << ',' << fmt_short(cell.alpha) << ',' << fmt_short(cell.v0l)
            << ',' << fmt_short(cell.v0h) << ',' << cell.policy << ',';
        try {
            PolicyOptions popt;
            popt.seed = spec.seed;
            popt.mode = spec.mode;
            popt.epsilon = spec.epsilon;
            popt.k_max = spec.k_max;
            auto outcome = make_policy(cell.policy, inst, popt);
            double mean, half = 0.0;
            if (outcome.exact_value) {
                mean = *outcome.exact_value;
            } else {
                SimOptions sim;
                sim.replications = spec.replications;
                sim.seed = spec.seed;
                sim.mode = spec.mode;
                auto stats = simulate(*outcome.calendar, inst, sim);
                mean = stats.mean;
                half = stats.half_width;
            }
            row << fmt(mean, 4) << ',' << fmt(half, 4) << ',' << fmt(outcome.opt_lp, 4)
                << ',' << fmt(outcome.opt_lp > 0 ? 100.0 * mean / outcome.opt_lp : 0.0, 2);
        } catch (const ValidationError&) {
            row << "nan,nan,nan,nan";
        }
        row << ',' << spec.replications << ',' << spec.seed << '\n';
        cell.row = row.str();
    };

    int threads = std::max(1, spec.threads);
    if (threads == 1 || cells.size() < 2) {
        for (auto& cell : cells) run_cell(cell);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (cells.size() + threads - 1) / threads;
        for (int k = 0; k < threads; ++k) {
            std::size_t lo = k * chunk, hi = std::min(cells.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t c = lo; c < hi; ++c) run_cell(cells[c]);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::string csv = "instance,alpha,v0L,v0H,policy,mean,ci_half,lp_ub,pct_of_ub,reps,seed\n";
    for (const auto& cell : cells) csv += cell.row;
    if (!spec.out_path.empty()) {
        std::ofstream out(spec.out_path, std::ios::binary);
        if (!out) throw ValidationError("cannot open output file '" + spec.out_path + "'");
        out << csv;
    }
    return csv;
}

namespace {

json assortment_json(const Assortment& s) {
    json arr = json::array();
    for (const auto& p : s) arr.push_back({p.item, p.price});
    return arr;
}

json calendar_json_body(const RandomizedCalendar& cal, const Instance& inst,
                        const std::string& policy, double opt_lp) {
    json j;
    j["policy"] = policy;
    j["opt_lp"] = opt_lp;
    auto g = guarantees(inst);
    j["guarantees"] = {{"delta_apx", g.delta_apx},
                       {"poisson_floor", g.poisson_floor},
                       {"reservation_delta", g.reservation_delta}};
    json periods = json::array();
    for (const auto& period : cal.dist) {
        if (period.size() == 1) {
            periods.push_back(assortment_json(inst.family.at(period[0].first)));
        } else {
            json mix = json::array();
            for (const auto& [index, p] : period)
                mix.push_back({{"assortment", assortment_json(inst.family.at(index))},
                               {"probability", p}});
            periods.push_back({{"distribution", mix}});
        }
    }
    j["periods"] = periods;
    return j;
}

}  // namespace

std::string calendar_to_json(const RandomizedCalendar& cal, const Instance& inst,
                             const std::string& policy, double opt_lp) {
    return calendar_json_body(cal, inst, policy, opt_lp).dump(2) + "\n";
}

std::string calendar_to_json(const DeterministicCalendar& cal, const Instance& inst,
                             const std::string& policy, double opt_lp) {
    return calendar_to_json(cal.as_randomized(), inst, policy, opt_lp);
}

RandomizedCalendar calendar_from_json(const std::string& text, const Instance& inst) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("calendar JSON parse error: ") + e.what());
    }
    RandomizedCalendar cal;
    auto parse_set = [&](const json& arr) {
        Assortment s;
        for (const auto& pj : arr) s.push_back({pj.at(0).get<int>(), pj.at(1).get<int>()});
        int index = inst.family.index_of(canonical(std::move(s)));
        if (index < 0) throw ValidationError("calendar assortment not in the family");
        return index;
    };
    for (const auto& period : j.at("periods")) {
        if (period.is_array()) {
            cal.dist.push_back({{parse_set(period), 1.0}});
        } else {
            std::vector<std::pair<int, double>> entries;
            for (const auto& e : period.at("distribution"))
                entries.push_back({parse_set(e.at("assortment")),
                                   e.at("probability").get<double>()});
            cal.dist.push_back(clean_distribution(std::move(entries)));
        }
    }
    cal.validate(inst.family);
    return cal;
}

std::string stats_to_json(const RevenueStats& stats) {
    json j;
    j["mean"] = stats.mean;
    j["half_width"] = stats.half_width;
    j["replications"] = stats.replications;
    j["seed"] = stats.seed;
    j["mode"] = mode_name(stats.mode);
    return j.dump(2) + "\n";
}

}  // namespace calrev
