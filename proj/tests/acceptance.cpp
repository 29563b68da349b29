// Acceptance gate: one line per criterion, nonzero exit on any failure.
// AC-10 is long-running and only runs with --long.

#include <chrono>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hatlab/block_machine.hpp"
#include "hatlab/bounds.hpp"
#include "hatlab/game.hpp"
#include "hatlab/io.hpp"
#include "hatlab/monte_carlo.hpp"
#include "hatlab/search.hpp"

#include "test_util.hpp"

using namespace hatlab;
using testutil::poly;
using testutil::rf;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RationalFunction reference_s1() { return rf({0, 1, 1, 1, 3, -3, 1}, {2, 1, 1, 1, -1}); }
RationalFunction reference_s2() { return rf({0, 1, -1, 1, 1}, {2, -3, 3}); }
RationalFunction reference_s3() {
    return RationalFunction(poly({0, 1, 5, -10, 10, -5, 1}),
                            poly({2, -2, 1}) * poly({1, 1}) * poly({2, -1}));
}
RationalFunction reference_s4() {
    return RationalFunction(
        poly({0, 1, 7, -21, 35, -20, -14, 40, -48, 40, -22, 7, -1}),
        poly({1, -1, 1}) * poly({1, 1, -1}) * poly({2, -2, 1}) * poly({1, 0, 1}) *
            poly({1, 1}) * poly({2, -1}));
}

RationalFunction dual_transform(const RationalFunction& v) {
    return rf({-1, 2}, {1}) + v.substitute(RationalFunction::one_minus_p());
}

void ac1() {
    double best = 1e9;
    WinCountVector cv;
    for (int i = 0; i < 3; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        cv = evaluate_pair(table_one_pair());
        best = std::min(best, seconds_since(t0));
    }
    require(cv.counts == std::vector<std::uint64_t>{0, 0, 3, 6, 8, 4, 1},
            "win counts differ from (3,6,8,4,1)");
    require(win_probability(cv, make_rational(1, 2)) == make_rational(11, 32),
            "value at 1/2 is not 11/32");
    require(best < 1e-3, "evaluation slower than 1 ms");
}

void ac2() {
    const auto t0 = std::chrono::steady_clock::now();
    require(derive_closed_form(builtin_machine(Builtin::FirstWhite)).value == rf({0, 1}, {2, -1}),
            "FIRST_WHITE closed form");
    require(derive_closed_form(builtin_machine(Builtin::FirstBlack)).value ==
                rf({0, 0, 2}, {1, 1}),
            "FIRST_BLACK closed form");
    require(derive_closed_form(builtin_machine(Builtin::S1)).value == reference_s1(),
            "S1 closed form");
    require(derive_closed_form(builtin_machine(Builtin::S2)).value == reference_s2(),
            "S2 closed form");
    require(derive_closed_form(builtin_machine(Builtin::S3)).value == reference_s3(),
            "S3 closed form");
    require(derive_closed_form(builtin_machine(Builtin::S4)).value == reference_s4(),
            "S4 closed form");
    require(seconds_since(t0) < 1.0, "closed forms slower than 1 s");
}

void ac3() {
    const BigRational half = make_rational(1, 2);
    std::vector<RationalFunction> vs;
    for (Builtin b : {Builtin::S1, Builtin::S2, Builtin::S3, Builtin::S4}) {
        vs.push_back(derive_closed_form(builtin_machine(b)).value);
        require(vs.back().eval(half) == make_rational(7, 20), "value at 1/2 is not 7/20");
    }
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            require(vs[i] != vs[j], "two strategy formulas coincide");
}

void ac4() {
    for (Builtin b : {Builtin::S1, Builtin::S2, Builtin::S3, Builtin::S4, Builtin::FirstWhite,
                      Builtin::FirstBlack}) {
        MachinePair mp = builtin_machine(b);
        require(derive_closed_form(dual_machine(mp)).value ==
                    dual_transform(derive_closed_form(mp).value),
                "machine duality identity fails on a builtin");
    }
    std::mt19937_64 g(2024);
    std::uniform_int_distribution<int> act(0, 3);
    int done = 0;
    while (done < 50) {
        const int o = done % 2;
        auto random_machine = [&] {
            for (;;) {
                std::vector<BlockAction> t(8);
                for (auto& a : t) a = BlockAction{act(g)};
                BlockMachine bm(3, o, std::move(t));
                if (bm.has_commit()) return bm;
            }
        };
        MachinePair mp{random_machine(), random_machine()};
        try {
            require(derive_closed_form(dual_machine(mp)).value ==
                        dual_transform(derive_closed_form(mp).value),
                    "machine duality identity fails on a random machine");
        } catch (const DomainError&) {
            continue;  // singular system; draw another machine
        }
        ++done;
    }

    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 1 + rep % 4;
        const FinitePair pr = testutil::random_pair(g, n);
        const FinitePair du = dual_finite(pr);
        for (int k = 0; k < 10; ++k) {
            const BigRational p = testutil::random_probability(g);
            BigRational rhs = 2 * p - 1 + win_probability(pr, 1 - p);
            rhs.canonicalize();
            require(win_probability(du, p) == rhs, "finite duality identity fails");
        }
    }
}

void ac5() {
    SearchConfig cfg;
    cfg.hats = 3;
    cfg.p = make_rational(1, 2);
    cfg.workers = 1;
    const auto t0 = std::chrono::steady_clock::now();
    SearchReport rep = exhaustive_pairs(cfg);
    const double single = seconds_since(t0);
    require(rep.best_value == make_rational(11, 32), "maximum is not 22/64");
    require(rep.optimum_count == 972, "optimum count is not 972");
    require(rep.class_count == 1, "optima split into more than one class");
    require(single < 1800.0, "single-threaded scan exceeded 30 minutes");
    cfg.workers = 4;
    SearchReport par = exhaustive_pairs(cfg);
    require(par.best_value == rep.best_value && par.optimum_count == rep.optimum_count &&
                par.class_count == rep.class_count && par.witnesses.size() == rep.witnesses.size(),
            "report depends on the worker count");
    for (std::size_t i = 0; i < rep.witnesses.size(); ++i)
        require(par.witnesses[i] == rep.witnesses[i], "witnesses depend on the worker count");
}

void ac6() {
    require(upper_bound(make_rational(1, 2)).upper == make_rational(3, 8), "UB(1/2) != 3/8");
    require(upper_bound(make_rational(1, 5)).upper == make_rational(2101, 15625),
            "UB(1/5) != 2101/15625");
    require(upper_bound(make_rational(2, 3)).upper == make_rational(46, 81), "UB(2/3) != 46/81");
    const std::pair<BigRational, const char*> table[15] = {
        {make_rational(1, 9), "0.0726178426539313"},
        {make_rational(1, 8), "0.0820488855242729"},
        {make_rational(1, 7), "0.0942976175586980"},
        {make_rational(1, 6), "0.110850337219936"},
        {make_rational(1, 5), "0.134464000000000"},
        {make_rational(1, 4), "0.170898437500000"},
        {make_rational(1, 3), "0.234567901234568"},
        {make_rational(1, 2), "0.375000000000000"},
        {make_rational(2, 3), "0.567901234567901"},
        {make_rational(3, 4), "0.670898437500000"},
        {make_rational(4, 5), "0.734464000000000"},
        {make_rational(5, 6), "0.777517003886603"},
        {make_rational(6, 7), "0.808583331844412"},
        {make_rational(7, 8), "0.832048885524273"},
        {make_rational(8, 9), "0.850395620431709"},
    };
    for (const auto& [p, expect] : table) {
        BoundRecord r = upper_bound(p);
        require(r.upper_exact, "grid point fell back to log space");
        require(format_significant(r.upper, 15) == expect,
                std::string("upper bound decimal mismatch at p = ") + rational_to_string(p));
    }
}

void ac7() {
    std::vector<RationalFunction> vs;
    for (Builtin b : {Builtin::S1, Builtin::S2, Builtin::S3, Builtin::S4})
        vs.push_back(derive_closed_form(builtin_machine(b)).value);
    for (int k = 1; k <= 99; ++k) {
        const BigRational p = make_rational(k, 100);
        BigRational best(-1);
        int arg = -1;
        for (int i = 0; i < 4; ++i) {
            const BigRational v = vs[i].eval(p);
            if (v > best) {
                best = v;
                arg = i;
            }
        }
        if (k < 50) require(arg == 0, "S1 is not the argmax below 1/2");
        if (k > 50) require(arg == 2, "S3 is not the argmax above 1/2");
        if (k == 50) require(vs[0].eval(p) == vs[2].eval(p), "no tie at 1/2");
    }
    for (long b = 2; b <= 30; ++b)
        for (long a = 1; a < b; ++a) {
            BigInt g;
            mpz_gcd(g.get_mpz_t(), BigInt(a).get_mpz_t(), BigInt(b).get_mpz_t());
            if (g != 1) continue;
            const BigRational p = make_rational(a, b);
            auto cert = upper_bound_at_least(p, lower_envelope(p).lower);
            require(cert.has_value() && *cert,
                    "lower envelope exceeds the upper bound at p = " + rational_to_string(p));
        }
}

void ac8() {
    const BigRational ps[3] = {make_rational(1, 3), make_rational(1, 2), make_rational(2, 3)};
    for (Builtin b : {Builtin::S1, Builtin::S2}) {
        MachinePair mp = builtin_machine(b);
        ClosedForm cf = derive_closed_form(mp);
        const int m = mp.block_size(), o = mp.overlap();
        for (int n : {3, 6, 9, 12}) {
            FinitePair fin = truncate_to_finite(mp, n);
            const int k = (n - m) / (m - o);
            for (const auto& p : ps) {
                BigRational diff = win_probability(fin, p) - cf.value.eval(p);
                if (diff < 0) diff = -diff;
                diff.canonicalize();
                require(diff <= tail_bound(cf, p, k), "truncation error exceeds the tail bound");
            }
        }
    }
}

void ac9() {
    const auto t0 = std::chrono::steady_clock::now();
    const BigRational threshold =
        win_probability(truncate_to_finite(builtin_machine(Builtin::S2), 6), make_rational(1, 2));
    SearchConfig cfg;
    cfg.hats = 6;
    cfg.p = make_rational(1, 2);
    cfg.mode = SearchMode::HillClimb;
    cfg.restarts = 50;
    cfg.seed = 1;
    cfg.workers = std::max(1u, std::thread::hardware_concurrency());
    SearchReport rep = hill_climb(cfg);
    require(rep.best_value >= threshold,
            "n=6 hill climb stayed below " + rational_to_string(threshold) + " (got " +
                rational_to_string(rep.best_value) + ")");

    SearchConfig sym;
    sym.hats = 3;
    sym.p = make_rational(1, 2);
    sym.mode = SearchMode::HillClimb;
    sym.symmetric = true;
    sym.restarts = 20;
    sym.seed = 1;
    require(hill_climb(sym).best_value == make_rational(11, 32),
            "n=3 symmetric hill climb missed 22/64");
    require(seconds_since(t0) < 600.0, "hill climbing exceeded 10 minutes");
}

void ac10() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "hatlab-acceptance-long";
    fs::remove_all(dir);
    fs::create_directories(dir);
    SearchConfig cfg;
    cfg.hats = 4;
    cfg.p = make_rational(1, 2);
    cfg.mode = SearchMode::ExhaustiveSymmetric;
    cfg.symmetric = true;
    cfg.workers = std::max(1u, std::thread::hardware_concurrency());
    cfg.checkpoint_path = (dir / "sym4.ckpt").string();
    cfg.checkpoint_interval = 200'000'000;
    SearchReport rep = exhaustive_symmetric(cfg);
    require(rep.best_value <= make_rational(7, 20), "a symmetric 4-hat table beats 0.35");
    require(!rep.witnesses.empty() && rep.optimum_count > 0, "empty report");

    // the completed run leaves its last mid-scan checkpoint behind; a second
    // run resumes from that genuinely partial state and must agree
    auto mid = load_search_checkpoint(cfg.checkpoint_path, search_config_hash(cfg));
    require(mid.has_value() && mid->cursor > 0 && mid->cursor < 4294967296ull,
            "no mid-scan checkpoint left to resume from");
    SearchReport resumed = exhaustive_symmetric(cfg);
    require(resumed.best_value == rep.best_value, "resumed best value differs");
    require(resumed.optimum_count == rep.optimum_count, "resumed optimum count differs");
    fs::remove_all(dir);
}

void ac11() {
    DerivativeDiagnostics d = derivative_diagnostics();
    require(d.lower_slope_at_0 == make_rational(1, 2), "V_S1'(0) != 1/2");
    require(d.upper_slope_at_1 == make_rational(3, 2), "V_S3'(1) != 3/2");
    require(std::abs(d.upper_bound_slope_at_0 - (1.0 - std::exp(-1.0))) < 1e-2,
            "upper-bound slope at 0 is off");
}

void ac12() {
    const auto t0 = std::chrono::steady_clock::now();
    auto check = [](const SimulationReport& rep, double truth, const char* what) {
        require(std::abs(rep.estimate - truth) <= 5 * rep.stderr_estimate,
                std::string(what) + " estimate outside 5 standard errors");
    };
    const std::uint64_t trials = 1'000'000;
    SimulationReport s1 = simulate_machine_pair(builtin_machine(Builtin::S1), 0.5, trials, 42, 100);
    check(s1, 0.35, "S1");
    SimulationReport fw =
        simulate_machine_pair(builtin_machine(Builtin::FirstWhite), 0.5, trials, 42, 100);
    check(fw, 1.0 / 3.0, "FIRST_WHITE");
    SimulationReport t1 = simulate_finite_pair(table_one_pair(), 0.5, trials, 42);
    check(t1, 11.0 / 32.0, "table-one pair");

    SimulationReport again = simulate_finite_pair(table_one_pair(), 0.5, trials, 42);
    require(again.wins == t1.wins && again.ww == t1.ww && again.bb == t1.bb,
            "simulation is not deterministic per seed");
    require(seconds_since(t0) < 60.0, "simulations exceeded 1 minute");
}

}  // namespace

int main(int argc, char** argv) {
    bool long_running = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--long") == 0) long_running = true;

    std::vector<std::pair<std::string, std::function<void()>>> criteria = {
        {"AC-1", ac1},  {"AC-2", ac2},  {"AC-3", ac3},   {"AC-4", ac4},
        {"AC-5", ac5},  {"AC-6", ac6},  {"AC-7", ac7},   {"AC-8", ac8},
        {"AC-9", ac9},  {"AC-11", ac11}, {"AC-12", ac12},
    };
    if (long_running) criteria.emplace_back("AC-10", ac10);

    int failures = 0;
    for (const auto& [id, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn();
            std::ostringstream line;
            line.setf(std::ios::fixed);
            line.precision(2);
            line << id << " PASS (" << seconds_since(t0) << "s)";
            std::cout << line.str() << "\n";
        } catch (const std::exception& e) {
            std::cout << id << " FAIL: " << e.what() << "\n";
            ++failures;
        }
    }
    if (!long_running)
        std::cout << "AC-10 SKIP (long-running; rerun with --long)" << "\n";
    return failures == 0 ? 0 : 1;
}
