// hatlab: exact evaluation, search, bounds and simulation for the
// two-player cooperative hat game at white-hat probability p.

#include <cstdlib>
#include <iostream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "hatlab/block_machine.hpp"
#include "hatlab/bounds.hpp"
#include "hatlab/game.hpp"
#include "hatlab/io.hpp"
#include "hatlab/monte_carlo.hpp"
#include "hatlab/search.hpp"

using namespace hatlab;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIO = 4;

// Exact subcommands accept only "a/b" or integer syntax; a decimal
// probability silently coerced to a nearby rational would poison exact
// results.
BigRational parse_exact_probability(const std::string& s) {
    if (s.find_first_not_of("0123456789/-") != std::string::npos)
        throw CLI::ValidationError("--p", "exact probability must be 'a/b' or an integer: " + s);
    return parse_rational(s);
}

using Strategy = std::variant<MachinePair, FinitePair>;

Strategy load_strategy(const std::string& spec) {
    try {
        return builtin_machine(spec);
    } catch (const std::invalid_argument&) {
        // not a builtin name; treat as a file path
    }
    const std::string text = read_file(spec);
    if (json_is_finite_pair(text)) return pair_from_json(text);
    return machine_pair_from_json(text);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

std::vector<BigRational> parse_grid(const std::string& spec) {
    std::vector<BigRational> grid;
    if (spec.find(':') != std::string::npos) {
        // start:stop:count, uniform rationals
        const auto c1 = spec.find(':');
        const auto c2 = spec.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw CLI::ValidationError("--grid", "expected start:stop:count");
        BigRational start = parse_exact_probability(spec.substr(0, c1));
        BigRational stop = parse_exact_probability(spec.substr(c1 + 1, c2 - c1 - 1));
        const long count = std::stol(spec.substr(c2 + 1));
        if (count < 1) throw CLI::ValidationError("--grid", "count must be positive");
        for (long i = 0; i < count; ++i) {
            BigRational p = count == 1 ? start
                                       : start + (stop - start) * make_rational(i, count - 1);
            p.canonicalize();
            grid.push_back(p);
        }
    } else {
        std::istringstream is(spec);
        std::string tok;
        while (std::getline(is, tok, ',')) grid.push_back(parse_exact_probability(tok));
    }
    return grid;
}

std::string value_line(const BigRational& v) {
    return rational_to_string(v) + " = " + format_significant(v, 15);
}

int run(int argc, char** argv) {
    CLI::App app{"exact strategy evaluation, search and bounds for the cooperative hat game"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-parseable JSON output");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "exact win probability of a finite strategy pair");
    std::string eval_pair_path, eval_p = "1/2";
    eval_cmd->add_option("--pair", eval_pair_path, "strategy-pair JSON file")->required();
    eval_cmd->add_option("--p", eval_p, "white-hat probability a/b");

    // closed-form
    auto* cf_cmd = app.add_subcommand("closed-form", "closed-form win rate of a block machine");
    std::string cf_strategy, cf_p, cf_format = "pretty";
    cf_cmd->add_option("--strategy", cf_strategy,
                       "s1|s2|s3|s4|first-white|first-black or machine file")->required();
    cf_cmd->add_option("--p", cf_p, "optionally evaluate at probability a/b");
    cf_cmd->add_option("--format", cf_format, "pretty|exact")
        ->check(CLI::IsMember({"pretty", "exact"}));

    // dual
    auto* dual_cmd = app.add_subcommand("dual", "dual (white/black-swapped) strategy");
    std::string dual_strategy, dual_out;
    dual_cmd->add_option("--strategy", dual_strategy, "builtin, machine file or pair file")
        ->required();
    dual_cmd->add_option("--out", dual_out, "output file (stdout if omitted)");

    // truncate
    auto* trunc_cmd = app.add_subcommand("truncate", "unroll a block machine onto n hats");
    std::string trunc_strategy, trunc_out;
    int trunc_hats = 0;
    trunc_cmd->add_option("--strategy", trunc_strategy, "builtin or machine file")->required();
    trunc_cmd->add_option("--hats", trunc_hats, "hat count")->required();
    trunc_cmd->add_option("--out", trunc_out, "output pair file (stdout if omitted)");

    // search
    auto* search_cmd = app.add_subcommand("search", "strategy-space search");
    std::string search_mode, search_p = "1/2", search_checkpoint;
    int search_hats = 3;
    std::uint64_t search_seed = 0, search_restarts = 1, search_max_iter = 0;
    unsigned search_workers = 1;
    bool search_sideways = false;
    search_cmd->add_option("mode", search_mode, "exhaustive|symmetric|hillclimb")
        ->required()
        ->check(CLI::IsMember({"exhaustive", "symmetric", "hillclimb"}));
    search_cmd->add_option("--hats", search_hats, "hat count")->required();
    search_cmd->add_option("--p", search_p, "white-hat probability a/b");
    search_cmd->add_option("--seed", search_seed, "RNG seed (hillclimb)");
    search_cmd->add_option("--restarts", search_restarts, "hillclimb restarts");
    search_cmd->add_option("--max-iterations", search_max_iter, "move cap per restart");
    search_cmd->add_option("--workers", search_workers, "worker threads");
    search_cmd->add_option("--checkpoint", search_checkpoint, "checkpoint file path");
    search_cmd->add_flag("--sideways", search_sideways, "accept equal-value moves");
    bool search_symmetric = false;
    search_cmd->add_flag("--symmetric", search_symmetric,
                         "hillclimb over single shared tables");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "lower and upper bounds on V(p)");
    std::string bounds_p;
    bounds_cmd->add_option("--p", bounds_p, "probability a/b")->required();

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "bound curve CSV over a p grid");
    std::string curve_grid, curve_out;
    bool curve_exact_only = false;
    curve_cmd->add_option("--grid", curve_grid, "start:stop:count or comma-separated rationals")
        ->required();
    curve_cmd->add_option("--out", curve_out, "output CSV path")->required();
    curve_cmd->add_flag("--exact-only", curve_exact_only,
                        "blank the upper column beyond the exact cutoff");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "seeded Monte Carlo simulation");
    std::string sim_strategy;
    double sim_p = 0.5;
    std::uint64_t sim_trials = 1'000'000, sim_seed = 0, sim_max_blocks = kDefaultMaxBlocks;
    unsigned sim_workers = 1;
    sim_cmd->add_option("--strategy", sim_strategy, "builtin, machine file or pair file")
        ->required();
    sim_cmd->add_option("--p", sim_p, "white-hat probability (float)");
    sim_cmd->add_option("--trials", sim_trials, "trial count");
    sim_cmd->add_option("--seed", sim_seed, "RNG seed");
    sim_cmd->add_option("--max-blocks", sim_max_blocks, "per-trial round cap");
    sim_cmd->add_option("--workers", sim_workers, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*eval_cmd) {
        FinitePair pair = pair_from_json(read_file(eval_pair_path));
        BigRational p = parse_exact_probability(eval_p);
        WinCountVector cv = evaluate_pair(pair);
        BigRational v = win_probability(cv, p);
        IntPolynomial poly = win_polynomial(cv);
        if (as_json) {
            json j{{"p", rational_to_string(p)},
                   {"value", rational_to_string(v)},
                   {"value_decimal", v.get_d()},
                   {"polynomial", poly.to_string()},
                   {"win_counts", cv.counts}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << value_line(v) << "\n";
            std::cout << "V(p) = " << poly.to_string() << "\n";
        }
        return 0;
    }

    if (*cf_cmd) {
        Strategy s = load_strategy(cf_strategy);
        if (!std::holds_alternative<MachinePair>(s))
            throw DomainError("closed-form needs a block machine, not a finite pair");
        ClosedForm cf = derive_closed_form(std::get<MachinePair>(s));
        json j{{"value", cf.value.to_string()},
               {"value_exact", cf.value.serialize()},
               {"system_size", cf.system_size},
               {"continuation_ratio", cf.continuation_ratio.to_string()}};
        std::string lines;
        if (cf_format == "exact")
            lines = cf.value.serialize() + "\n";
        else
            lines = "V(p) = " + cf.value.to_string() + "\n";
        if (!cf_p.empty()) {
            BigRational p = parse_exact_probability(cf_p);
            BigRational v = cf.value.eval(p);
            j["p"] = rational_to_string(p);
            j["at_p"] = rational_to_string(v);
            j["at_p_decimal"] = v.get_d();
            lines += value_line(v) + "\n";
        }
        std::cout << (as_json ? j.dump(2) + "\n" : lines);
        return 0;
    }

    if (*dual_cmd) {
        Strategy s = load_strategy(dual_strategy);
        if (std::holds_alternative<MachinePair>(s))
            emit(dual_out, machine_pair_to_json(dual_machine(std::get<MachinePair>(s))));
        else
            emit(dual_out, pair_to_json(dual_finite(std::get<FinitePair>(s))));
        return 0;
    }

    if (*trunc_cmd) {
        Strategy s = load_strategy(trunc_strategy);
        if (!std::holds_alternative<MachinePair>(s))
            throw DomainError("truncate needs a block machine, not a finite pair");
        emit(trunc_out, pair_to_json(truncate_to_finite(std::get<MachinePair>(s), trunc_hats)));
        return 0;
    }

    if (*search_cmd) {
        SearchConfig cfg;
        cfg.hats = search_hats;
        cfg.p = parse_exact_probability(search_p);
        cfg.seed = search_seed;
        cfg.restarts = search_restarts;
        cfg.max_iterations = search_max_iter;
        cfg.sideways_moves = search_sideways;
        cfg.workers = search_workers;
        cfg.checkpoint_path = search_checkpoint;
        if (const char* env = std::getenv("HATLAB_CHECKPOINT_INTERVAL"))
            cfg.checkpoint_interval = std::strtoull(env, nullptr, 10);
        SearchReport rep;
        if (search_mode == "exhaustive") {
            cfg.mode = SearchMode::Exhaustive;
            rep = exhaustive_pairs(cfg);
        } else if (search_mode == "symmetric") {
            cfg.mode = SearchMode::ExhaustiveSymmetric;
            cfg.symmetric = true;
            rep = exhaustive_symmetric(cfg);
        } else {
            cfg.mode = SearchMode::HillClimb;
            cfg.symmetric = search_symmetric;
            rep = hill_climb(cfg);
        }
        if (as_json) {
            std::cout << search_report_to_json(rep);
        } else {
            std::cout << "best value: " << value_line(rep.best_value) << "\n";
            if (rep.optimum_count) std::cout << "optima: " << rep.optimum_count << "\n";
            if (rep.class_count) std::cout << "equivalence classes: " << rep.class_count << "\n";
            std::cout << "moves examined: " << rep.iterations << "\n";
        }
        return 0;
    }

    if (*bounds_cmd) {
        BigRational p = parse_exact_probability(bounds_p);
        BoundRecord rec = upper_bound(p);
        if (as_json) {
            json j{{"p", rational_to_string(rec.p)},
                   {"lower", rational_to_string(rec.lower)},
                   {"lower_decimal", rec.lower.get_d()},
                   {"lower_witness", rec.lower_witness},
                   {"upper", rational_to_string(rec.upper)},
                   {"upper_decimal", rec.upper.get_d()},
                   {"binomial_exponent", rec.binomial_exponent.get_str()},
                   {"upper_exact", rec.upper_exact}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "lower (" << rec.lower_witness << "): " << value_line(rec.lower) << "\n";
            std::cout << "upper: " << value_line(rec.upper)
                      << (rec.upper_exact ? "" : " (log-space float)") << "\n";
        }
        return 0;
    }

    if (*curve_cmd) {
        emit_curve(parse_grid(curve_grid), curve_out, curve_exact_only);
        return 0;
    }

    if (*sim_cmd) {
        Strategy s = load_strategy(sim_strategy);
        SimulationReport rep;
        if (std::holds_alternative<MachinePair>(s))
            rep = simulate_machine_pair(std::get<MachinePair>(s), sim_p, sim_trials, sim_seed,
                                        sim_max_blocks, sim_workers);
        else
            rep = simulate_finite_pair(std::get<FinitePair>(s), sim_p, sim_trials, sim_seed,
                                       sim_workers);
        std::cout << simulation_report_to_json(rep);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const IOError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIO;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
