#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hatlab/block_machine.hpp"

#include "test_util.hpp"

using namespace hatlab;
using testutil::poly;
using testutil::rf;

namespace {

RationalFunction v_first_white() { return rf({0, 1}, {2, -1}); }
RationalFunction v_first_black() { return rf({0, 0, 2}, {1, 1}); }
RationalFunction v_s1() { return rf({0, 1, 1, 1, 3, -3, 1}, {2, 1, 1, 1, -1}); }
RationalFunction v_s2() { return rf({0, 1, -1, 1, 1}, {2, -3, 3}); }

RationalFunction v_s3() {
    IntPolynomial den = poly({2, -2, 1}) * poly({1, 1}) * poly({2, -1});
    return RationalFunction(poly({0, 1, 5, -10, 10, -5, 1}), den);
}

RationalFunction v_s4() {
    IntPolynomial den = poly({1, -1, 1}) * poly({1, 1, -1}) * poly({2, -2, 1}) *
                        poly({1, 0, 1}) * poly({1, 1}) * poly({2, -1});
    return RationalFunction(
        poly({0, 1, 7, -21, 35, -20, -14, 40, -48, 40, -22, 7, -1}), den);
}

// duality transform right-hand side: 2p - 1 + V(1-p)
RationalFunction dual_transform(const RationalFunction& v) {
    return rf({-1, 2}, {1}) + v.substitute(RationalFunction::one_minus_p());
}

BlockMachine random_machine(std::mt19937_64& g, int m, int o) {
    std::uniform_int_distribution<int> act(0, m);  // 0 = recurse
    for (;;) {
        std::vector<BlockAction> table(std::size_t{1} << m);
        for (auto& a : table) a = BlockAction{act(g)};
        BlockMachine bm(m, o, std::move(table));
        if (bm.has_commit()) return bm;
    }
}

}  // namespace

TEST_CASE("builtin shapes") {
    CHECK(builtin_machine(Builtin::S1).overlap() == 1);
    CHECK(builtin_machine(Builtin::S2).overlap() == 0);
    CHECK(builtin_machine(Builtin::S1).block_size() == 3);
    CHECK(builtin_machine(Builtin::FirstWhite).block_size() == 1);
    CHECK(builtin_machine(Builtin::S1).symmetric());
    CHECK(builtin_machine("s3").player1 == dual_machine(builtin_machine("s1")).player1);
    CHECK_THROWS_AS(builtin_machine("s5"), std::invalid_argument);
}

TEST_CASE("dual machine") {
    CHECK(dual_machine(builtin_machine(Builtin::FirstWhite)).player1 ==
          builtin_machine(Builtin::FirstBlack).player1);
    std::mt19937_64 g(3);
    for (int rep = 0; rep < 100; ++rep) {
        BlockMachine bm = random_machine(g, 3, rep % 2);
        CHECK(dual_machine(dual_machine(bm)) == bm);
    }
    // S2 is isomorphic to its own dual
    CHECK(derive_closed_form(dual_machine(builtin_machine(Builtin::S2))).value ==
          derive_closed_form(builtin_machine(Builtin::S2)).value);
}

TEST_CASE("closed forms match the printed formulas") {
    CHECK(derive_closed_form(builtin_machine(Builtin::FirstWhite)).value == v_first_white());
    CHECK(derive_closed_form(builtin_machine(Builtin::FirstBlack)).value == v_first_black());
    CHECK(derive_closed_form(builtin_machine(Builtin::S1)).value == v_s1());
    CHECK(derive_closed_form(builtin_machine(Builtin::S2)).value == v_s2());
    CHECK(derive_closed_form(builtin_machine(Builtin::S3)).value == v_s3());
    CHECK(derive_closed_form(builtin_machine(Builtin::S4)).value == v_s4());
}

TEST_CASE("all four main strategies give 7/20 at one half") {
    const BigRational half = make_rational(1, 2);
    for (Builtin b : {Builtin::S1, Builtin::S2, Builtin::S3, Builtin::S4})
        CHECK(derive_closed_form(builtin_machine(b)).value.eval(half) == make_rational(7, 20));
}

TEST_CASE("non-committing strategy is rejected") {
    std::vector<BlockAction> all_recurse(8, BlockAction::recurse());
    MachinePair mp{BlockMachine(3, 1, all_recurse), BlockMachine(3, 1, all_recurse)};
    CHECK_THROWS_WITH_AS(derive_closed_form(mp), "non-committing strategy", DomainError);
}

TEST_CASE("duality as a rational-function identity") {
    for (Builtin b : {Builtin::S1, Builtin::S2, Builtin::S3, Builtin::S4, Builtin::FirstWhite,
                      Builtin::FirstBlack}) {
        MachinePair mp = builtin_machine(b);
        CHECK(derive_closed_form(dual_machine(mp)).value ==
              dual_transform(derive_closed_form(mp).value));
    }
    std::mt19937_64 g(7);
    int done = 0;
    while (done < 50) {
        const int o = done % 2;
        MachinePair mp{random_machine(g, 3, o), random_machine(g, 3, o)};
        RationalFunction v, vd;
        try {
            v = derive_closed_form(mp).value;
            vd = derive_closed_form(dual_machine(mp)).value;
        } catch (const DomainError&) {
            continue;  // singular renewal system for a degenerate random table
        }
        CHECK(vd == dual_transform(v));
        ++done;
    }
}

TEST_CASE("solo values collapse to p for overlap 0") {
    RationalFunction p = RationalFunction::variable();
    std::mt19937_64 g(11);
    for (int rep = 0; rep < 30; ++rep) {
        MachinePair mp{random_machine(g, 3, 0), random_machine(g, 3, 0)};
        ClosedForm cf;
        try {
            cf = derive_closed_form(mp);
        } catch (const DomainError&) {
            continue;
        }
        CHECK(!cf.solo_values.empty());
        for (const auto& v : cf.solo_values) CHECK(v == p);
    }
    for (const auto& v : derive_closed_form(builtin_machine(Builtin::S2)).solo_values)
        CHECK(v == p);
}

TEST_CASE("truncation") {
    MachinePair s2 = builtin_machine(Builtin::S2);
    CHECK(truncate_to_finite(s2, 3) == table_one_pair());

    FinitePair fw2 = truncate_to_finite(builtin_machine(Builtin::FirstWhite), 2);
    // masks: 0=BB, 1=WB, 2=BW, 3=WW; opponent hat 1 white -> pick 1,
    // BW -> pick 2, BB -> fallback 1
    CHECK(fw2.player1.table() == std::vector<std::uint8_t>{1, 1, 2, 1});

    CHECK(win_probability(truncate_to_finite(s2, 6), make_rational(1, 2)) ==
          make_rational(179, 512));

    CHECK_THROWS_AS(truncate_to_finite(s2, 2), DomainError);
}

TEST_CASE("tail bound") {
    const BigRational half = make_rational(1, 2);
    CHECK(tail_bound(builtin_machine(Builtin::S2), half, 1) == make_rational(1, 16));
    CHECK(tail_bound(builtin_machine(Builtin::S1), half, 1) == make_rational(1, 16));
    CHECK(tail_bound(builtin_machine(Builtin::S1), half, 0) == 1);
    CHECK_THROWS_WITH_AS(tail_bound(builtin_machine(Builtin::S1), BigRational(0), 1),
                         "degenerate probability", DomainError);
    CHECK_THROWS_WITH_AS(tail_bound(builtin_machine(Builtin::S1), BigRational(1), 1),
                         "degenerate probability", DomainError);
}

TEST_CASE("truncation converges within the tail bound") {
    const BigRational ps[3] = {make_rational(1, 3), make_rational(1, 2), make_rational(2, 3)};
    for (Builtin b : {Builtin::S1, Builtin::S2}) {
        MachinePair mp = builtin_machine(b);
        ClosedForm cf = derive_closed_form(mp);
        const int m = mp.block_size(), o = mp.overlap();
        for (int n : {3, 6, 9, 12}) {
            const int k = (n - m) / (m - o);
            FinitePair fin = truncate_to_finite(mp, n);
            for (const auto& p : ps) {
                BigRational diff = win_probability(fin, p) - cf.value.eval(p);
                if (diff < 0) diff = -diff;
                diff.canonicalize();
                CHECK(diff <= tail_bound(cf, p, k));
            }
        }
    }
}

TEST_CASE("envelope argmax on the percent grid") {
    RationalFunction vs[4] = {v_s1(), v_s2(), v_s3(), v_s4()};
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
        if (k < 50) CHECK(arg == 0);
        if (k > 50) CHECK(arg == 2);
        if (k == 50) CHECK(vs[0].eval(p) == vs[2].eval(p));
    }
}

TEST_CASE("pattern strings") {
    CHECK(pattern_to_string(0, 3) == "BBB");
    CHECK(pattern_to_string(1, 3) == "WBB");  // position 1 leftmost
    CHECK(pattern_to_string(6, 3) == "BWW");
    CHECK(pattern_from_string("WBB") == 1);
    CHECK(pattern_from_string("WWW") == 7);
    CHECK_THROWS_AS(pattern_from_string("WXB"), std::invalid_argument);
}

TEST_CASE("machine validation") {
    CHECK_THROWS_AS(BlockMachine(5, 1, std::vector<BlockAction>(32)), std::invalid_argument);
    CHECK_THROWS_AS(BlockMachine(3, 2, std::vector<BlockAction>(8)), std::invalid_argument);
    CHECK_THROWS_AS(BlockMachine(3, 1, std::vector<BlockAction>(4)), std::invalid_argument);
    CHECK_THROWS_AS(BlockMachine(1, 0, {BlockAction{2}, BlockAction{0}}), std::invalid_argument);
}
