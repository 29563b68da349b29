#pragma once

#include <cstdint>
#include <vector>

#include "hatlab/polynomial.hpp"
#include "hatlab/rational.hpp"

namespace hatlab {

constexpr int kMaxHats = 16;

// Finite stack of hats as a bitmask, bit (j-1) set iff hat j is white.
struct HatConfig {
    int hats = 0;
    std::uint32_t mask = 0;
};

// Per-player lookup table: own hat choice (1-based) for every opponent
// configuration mask.
class FiniteStrategy {
public:
    FiniteStrategy(int hats, std::vector<std::uint8_t> table);

    int hats() const { return hats_; }
    const std::vector<std::uint8_t>& table() const { return table_; }
    // own pick (1..n) given the opponent's configuration
    int choice(std::uint32_t opponent_mask) const { return table_[opponent_mask]; }
    void set_choice(std::uint32_t opponent_mask, int hat);

    bool operator==(const FiniteStrategy&) const = default;

private:
    int hats_;
    std::vector<std::uint8_t> table_;
};

struct FinitePair {
    FiniteStrategy player1;
    FiniteStrategy player2;

    int hats() const { return player1.hats(); }
    bool operator==(const FinitePair&) const = default;
};

// N_w = number of winning configuration pairs with w white hats in
// total, w = 0..2n. V(p) = sum N_w p^w (1-p)^(2n-w).
struct WinCountVector {
    int hats = 0;
    std::vector<std::uint64_t> counts;  // length 2n+1

    std::uint64_t total() const;
    bool operator==(const WinCountVector&) const = default;
};

// Bijection on {1..n}; images[i-1] = sigma(i).
struct Permutation {
    std::vector<std::uint8_t> images;

    int size() const { return static_cast<int>(images.size()); }
    int apply(int i) const { return images[i - 1]; }
    Permutation inverse() const;
    static Permutation identity(int n);
    std::uint32_t apply_to_mask(std::uint32_t mask) const;
};

// Full enumeration of all 2^n x 2^n configuration pairs. (x1,x2) wins
// iff hat f1(x2) of x1 is white and hat f2(x1) of x2 is white.
WinCountVector evaluate_pair(const FinitePair& pair);

// Exact win probability at p in [0,1].
BigRational win_probability(const FinitePair& pair, const BigRational& p);
BigRational win_probability(const WinCountVector& counts, const BigRational& p);

// The win probability expanded as a polynomial in p.
IntPolynomial win_polynomial(const WinCountVector& counts);

// Switch the roles of white and black: table'(m) = table(~m).
FiniteStrategy dual_finite(const FiniteStrategy& s);
FinitePair dual_finite(const FinitePair& pair);

// (f1,f2) -> (s1 o f1 o s2^-1, s2 o f2 o s1^-1); win counts invariant.
FinitePair relabel_pair(const FinitePair& pair, const Permutation& s1, const Permutation& s2);

FinitePair swap_players(const FinitePair& pair);

// Set both tables' entries at the two monochromatic inputs to hat 1.
FinitePair normalize_dont_cares(const FinitePair& pair);

// Don't-care normalization followed by the lexicographically smallest
// relabeling over all n!^2 permutation pairs. Idempotent. n <= 4 only.
FinitePair canonical_form(const FinitePair& pair);

// The optimal symmetric 3-hat strategy pair, monochromatic entries
// fixed to hat 1.
FinitePair table_one_pair();
// An equivalent 3-hat strategy pair (self-dual base of S4).
FinitePair table_seven_pair();

}  // namespace hatlab
