#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hatlab/game.hpp"

namespace hatlab {

enum class SearchMode { Exhaustive, ExhaustiveSymmetric, HillClimb };

struct SearchConfig {
    int hats = 3;
    BigRational p = make_rational(1, 2);
    bool symmetric = false;
    SearchMode mode = SearchMode::Exhaustive;
    std::uint64_t seed = 0;
    std::uint64_t restarts = 1;
    std::uint64_t max_iterations = 0;  // 0 = until convergence
    bool sideways_moves = false;
    unsigned workers = 1;
    std::string checkpoint_path;  // required for symmetric n=4
    std::uint64_t checkpoint_interval = 10'000'000;  // enumerated units
};

struct SearchReport {
    BigRational best_value;
    WinCountVector best_win_counts;
    std::uint64_t optimum_count = 0;  // exhaustive only
    std::uint64_t class_count = 0;    // exhaustive, n <= 3 only
    std::vector<FinitePair> witnesses;  // up to 10
    std::uint64_t iterations = 0;
    double wall_time = 0.0;
};

// Scans all (f1,f2) pairs; n <= 3.
SearchReport exhaustive_pairs(const SearchConfig& cfg);

// Scans all single tables used by both players; n <= 4. The n=4 space
// (4^16 tables) is long-running and requires cfg.checkpoint_path; an
// existing checkpoint for the same config is resumed.
SearchReport exhaustive_symmetric(const SearchConfig& cfg);

// Random-restart local search over single-entry mutations; exact
// objective, deterministic per (seed, config).
SearchReport hill_climb(const SearchConfig& cfg);

// Incremental re-count after rewriting one table entry: only the 2^n
// configuration pairs whose relevant opponent configuration equals
// input_mask are touched. Equals evaluate_pair on the mutated pair.
WinCountVector delta_evaluate(const FinitePair& pair, const WinCountVector& counts,
                              int player, std::uint32_t input_mask, int new_choice);

std::uint64_t search_config_hash(const SearchConfig& cfg);

}  // namespace hatlab
