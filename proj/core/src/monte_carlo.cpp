#include "hatlab/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace hatlab {

namespace {

// splitmix64; the per-trial stream state is derived from (seed, trial).
struct TrialStream {
    std::uint64_t state;

    TrialStream(std::uint64_t seed, std::uint64_t trial)
        : state(seed ^ (trial * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull)) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform() { return (next() >> 11) * 0x1.0p-53; }
    bool white(double p) { return uniform() < p; }
};

struct Tally {
    std::uint64_t wins = 0, unresolved = 0, ww = 0, wb = 0, bw = 0, bb = 0;

    void operator+=(const Tally& o) {
        wins += o.wins;
        unresolved += o.unresolved;
        ww += o.ww;
        wb += o.wb;
        bw += o.bw;
        bb += o.bb;
    }
};

// Lazily generated hat stack; hat j (1-based) is drawn on first access.
struct LazyStack {
    TrialStream* rng;
    double p;
    std::vector<bool> hats;

    bool white_at(std::size_t j) {
        while (hats.size() < j) hats.push_back(rng->white(p));
        return hats[j - 1];
    }
};

// Runs one player's machine against the opponent's stack; returns the
// 1-based index of the committed own hat, or 0 if unresolved.
std::size_t run_machine(const BlockMachine& machine, LazyStack& opponent,
                        std::uint64_t max_blocks) {
    const int m = machine.block_size();
    std::size_t offset = 0;
    for (std::uint64_t round = 0; round < max_blocks; ++round) {
        std::uint32_t pattern = 0;
        for (int i = 0; i < m; ++i)
            if (opponent.white_at(offset + i + 1)) pattern |= 1u << i;
        BlockAction act = machine.action(pattern);
        if (act.is_commit()) return offset + act.commit_index;
        offset += machine.shift();
    }
    return 0;
}

void tally_outcome(Tally& t, bool p1_white, bool p2_white) {
    if (p1_white && p2_white) {
        ++t.ww;
        ++t.wins;
    } else if (p1_white) {
        ++t.wb;
    } else if (p2_white) {
        ++t.bw;
    } else {
        ++t.bb;
    }
}

template <typename TrialFn>
SimulationReport run_trials(std::uint64_t trials, std::uint64_t seed, std::uint64_t max_blocks,
                            unsigned workers, TrialFn&& trial_fn) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    workers = std::max(1u, workers);
    std::vector<Tally> partial(workers);
    std::vector<std::thread> threads;
    for (unsigned wk = 0; wk < workers; ++wk) {
        const std::uint64_t lo = trials * wk / workers;
        const std::uint64_t hi = trials * (wk + 1) / workers;
        threads.emplace_back([&, wk, lo, hi] {
            Tally local;
            for (std::uint64_t i = lo; i < hi; ++i) trial_fn(local, i);
            partial[wk] = local;
        });
    }
    for (auto& t : threads) t.join();
    Tally total;
    for (const auto& t : partial) total += t;

    SimulationReport rep;
    rep.trials = trials;
    rep.wins = total.wins;
    rep.unresolved = total.unresolved;
    rep.ww = total.ww;
    rep.wb = total.wb;
    rep.bw = total.bw;
    rep.bb = total.bb;
    rep.seed = seed;
    rep.max_blocks = max_blocks;
    rep.estimate = static_cast<double>(rep.wins) / static_cast<double>(trials);
    rep.stderr_estimate =
        std::sqrt(rep.estimate * (1.0 - rep.estimate) / static_cast<double>(trials));
    return rep;
}

}  // namespace

SimulationReport simulate_machine_pair(const MachinePair& mp, double p, std::uint64_t trials,
                                       std::uint64_t seed, std::uint64_t max_blocks,
                                       unsigned workers) {
    if (max_blocks < 1) throw std::invalid_argument("max_blocks must be at least 1");
    return run_trials(trials, seed, max_blocks, workers, [&](Tally& t, std::uint64_t i) {
        TrialStream rng(seed, i);
        LazyStack stack1{&rng, p, {}};
        LazyStack stack2{&rng, p, {}};
        const std::size_t pick1 = run_machine(mp.player1, stack2, max_blocks);
        const std::size_t pick2 = run_machine(mp.player2, stack1, max_blocks);
        if (pick1 == 0 || pick2 == 0) {
            ++t.unresolved;  // counts as a loss in `estimate`, tallied separately
            return;
        }
        tally_outcome(t, stack1.white_at(pick1), stack2.white_at(pick2));
    });
}

SimulationReport simulate_finite_pair(const FinitePair& pair, double p, std::uint64_t trials,
                                      std::uint64_t seed, unsigned workers) {
    const int n = pair.hats();
    return run_trials(trials, seed, 1, workers, [&](Tally& t, std::uint64_t i) {
        TrialStream rng(seed, i);
        std::uint32_t x1 = 0, x2 = 0;
        for (int j = 0; j < n; ++j)
            if (rng.white(p)) x1 |= 1u << j;
        for (int j = 0; j < n; ++j)
            if (rng.white(p)) x2 |= 1u << j;
        const int pick1 = pair.player1.choice(x2);
        const int pick2 = pair.player2.choice(x1);
        tally_outcome(t, (x1 >> (pick1 - 1)) & 1, (x2 >> (pick2 - 1)) & 1);
    });
}

}  // namespace hatlab
