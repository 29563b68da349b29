#pragma once

#include <cstdint>

#include "hatlab/block_machine.hpp"
#include "hatlab/game.hpp"

namespace hatlab {

struct SimulationReport {
    std::uint64_t trials = 0;
    std::uint64_t wins = 0;
    std::uint64_t unresolved = 0;  // trials hitting the block cap (count as losses)
    double estimate = 0.0;         // wins / trials
    double stderr_estimate = 0.0;
    // tallies by (player 1 pick color, player 2 pick color)
    std::uint64_t ww = 0, wb = 0, bw = 0, bb = 0;
    std::uint64_t seed = 0;
    std::uint64_t max_blocks = 0;
};

// Per-trial random streams are split from (seed, trial index), so the
// tallies are independent of the worker count.
SimulationReport simulate_machine_pair(const MachinePair& mp, double p, std::uint64_t trials,
                                       std::uint64_t seed, std::uint64_t max_blocks,
                                       unsigned workers = 1);

SimulationReport simulate_finite_pair(const FinitePair& pair, double p, std::uint64_t trials,
                                      std::uint64_t seed, unsigned workers = 1);

constexpr std::uint64_t kDefaultMaxBlocks = 10'000;

}  // namespace hatlab
