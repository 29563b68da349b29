#include "hatlab/game.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace hatlab {

FiniteStrategy::FiniteStrategy(int hats, std::vector<std::uint8_t> table)
    : hats_(hats), table_(std::move(table)) {
    if (hats < 1 || hats > kMaxHats) throw std::invalid_argument("hat count out of range");
    if (table_.size() != (std::size_t{1} << hats)) throw std::invalid_argument("table size mismatch");
    for (auto t : table_)
        if (t < 1 || t > hats) throw std::invalid_argument("table entry out of range");
}

void FiniteStrategy::set_choice(std::uint32_t opponent_mask, int hat) {
    if (hat < 1 || hat > hats_) throw std::invalid_argument("table entry out of range");
    table_[opponent_mask] = static_cast<std::uint8_t>(hat);
}

std::uint64_t WinCountVector::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Permutation Permutation::identity(int n) {
    Permutation p;
    p.images.resize(n);
    for (int i = 0; i < n; ++i) p.images[i] = static_cast<std::uint8_t>(i + 1);
    return p;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.images.resize(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        p.images[images[i] - 1] = static_cast<std::uint8_t>(i + 1);
    return p;
}

std::uint32_t Permutation::apply_to_mask(std::uint32_t mask) const {
    std::uint32_t out = 0;
    for (int i = 1; i <= size(); ++i)
        if (mask & (1u << (i - 1))) out |= 1u << (apply(i) - 1);
    return out;
}

WinCountVector evaluate_pair(const FinitePair& pair) {
    const int n = pair.hats();
    if (pair.player2.hats() != n) throw std::invalid_argument("hat count mismatch");
    const std::uint32_t configs = 1u << n;
    WinCountVector out;
    out.hats = n;
    out.counts.assign(2 * n + 1, 0);
    for (std::uint32_t x1 = 0; x1 < configs; ++x1) {
        const int pick2 = pair.player2.choice(x1);  // player 2 sees x1
        const int w1 = std::popcount(x1);
        for (std::uint32_t x2 = 0; x2 < configs; ++x2) {
            if (!((x2 >> (pick2 - 1)) & 1)) continue;
            const int pick1 = pair.player1.choice(x2);
            if ((x1 >> (pick1 - 1)) & 1)
                ++out.counts[w1 + std::popcount(x2)];
        }
    }
    return out;
}

BigRational win_probability(const WinCountVector& cv, const BigRational& p) {
    if (p < 0 || p > 1) throw DomainError("probability out of range");
    const int n = cv.hats;
    BigRational q = BigRational(1) - p;
    BigRational acc(0);
    for (int w = 0; w <= 2 * n; ++w) {
        if (cv.counts[w] == 0) continue;
        acc += BigRational(BigInt(static_cast<unsigned long>(cv.counts[w]))) *
               pow_rational(p, w) * pow_rational(q, 2 * n - w);
    }
    acc.canonicalize();
    return acc;
}

BigRational win_probability(const FinitePair& pair, const BigRational& p) {
    return win_probability(evaluate_pair(pair), p);
}

IntPolynomial win_polynomial(const WinCountVector& cv) {
    const int n = cv.hats;
    IntPolynomial pp = IntPolynomial::variable();
    IntPolynomial qq({1, -1});
    IntPolynomial acc;
    // Horner in q: sum_w N_w p^w q^(2n-w)
    for (int w = 0; w <= 2 * n; ++w) {
        IntPolynomial term = IntPolynomial::constant(BigInt(static_cast<unsigned long>(cv.counts[w])));
        for (int i = 0; i < w; ++i) term = term * pp;
        for (int i = 0; i < 2 * n - w; ++i) term = term * qq;
        acc = acc + term;
    }
    return acc;
}

FiniteStrategy dual_finite(const FiniteStrategy& s) {
    const std::uint32_t configs = 1u << s.hats();
    std::vector<std::uint8_t> table(configs);
    for (std::uint32_t m = 0; m < configs; ++m)
        table[m] = static_cast<std::uint8_t>(s.choice(~m & (configs - 1)));
    return FiniteStrategy(s.hats(), std::move(table));
}

FinitePair dual_finite(const FinitePair& pair) {
    return {dual_finite(pair.player1), dual_finite(pair.player2)};
}

FinitePair relabel_pair(const FinitePair& pair, const Permutation& s1, const Permutation& s2) {
    const int n = pair.hats();
    if (s1.size() != n || s2.size() != n) throw std::invalid_argument("permutation size mismatch");
    const std::uint32_t configs = 1u << n;
    Permutation s1inv = s1.inverse(), s2inv = s2.inverse();
    std::vector<std::uint8_t> t1(configs), t2(configs);
    for (std::uint32_t m = 0; m < configs; ++m) {
        t1[m] = static_cast<std::uint8_t>(s1.apply(pair.player1.choice(s2inv.apply_to_mask(m))));
        t2[m] = static_cast<std::uint8_t>(s2.apply(pair.player2.choice(s1inv.apply_to_mask(m))));
    }
    return {FiniteStrategy(n, std::move(t1)), FiniteStrategy(n, std::move(t2))};
}

FinitePair swap_players(const FinitePair& pair) {
    return {pair.player2, pair.player1};
}

FinitePair normalize_dont_cares(const FinitePair& pair) {
    FinitePair out = pair;
    const std::uint32_t full = (1u << pair.hats()) - 1;
    out.player1.set_choice(0, 1);
    out.player1.set_choice(full, 1);
    out.player2.set_choice(0, 1);
    out.player2.set_choice(full, 1);
    return out;
}

FinitePair canonical_form(const FinitePair& pair) {
    const int n = pair.hats();
    if (n > 4) throw DomainError("canonicalization limit");
    FinitePair base = normalize_dont_cares(pair);

    auto key = [](const FinitePair& pr) {
        std::vector<std::uint8_t> k = pr.player1.table();
        k.insert(k.end(), pr.player2.table().begin(), pr.player2.table().end());
        return k;
    };

    std::vector<Permutation> perms;
    {
        std::vector<std::uint8_t> ims(n);
        for (int i = 0; i < n; ++i) ims[i] = static_cast<std::uint8_t>(i + 1);
        do {
            perms.push_back(Permutation{ims});
        } while (std::next_permutation(ims.begin(), ims.end()));
    }

    FinitePair best = base;
    std::vector<std::uint8_t> best_key = key(base);
    for (const auto& s1 : perms) {
        for (const auto& s2 : perms) {
            FinitePair cand = normalize_dont_cares(relabel_pair(base, s1, s2));
            auto k = key(cand);
            if (k < best_key) {
                best_key = std::move(k);
                best = std::move(cand);
            }
        }
    }
    return best;
}

namespace {
FinitePair symmetric_three_hat_pair(const std::vector<std::uint8_t>& table) {
    FiniteStrategy s(3, table);
    return {s, s};
}
}  // namespace

FinitePair table_one_pair() {
    // opponent mask (bit j-1 = hat j white) -> own choice
    return symmetric_three_hat_pair({1, 1, 3, 1, 2, 2, 3, 1});
}

FinitePair table_seven_pair() {
    return symmetric_three_hat_pair({1, 2, 1, 1, 3, 2, 3, 1});
}

}  // namespace hatlab
