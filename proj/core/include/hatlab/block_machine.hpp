#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hatlab/game.hpp"
#include "hatlab/rational_function.hpp"

namespace hatlab {

constexpr int kMaxBlockSize = 4;

// Action on observing one opponent block: commit to an own hat within
// the aligned block, or recurse to the next block.
struct BlockAction {
    int commit_index = 0;  // 1..m, or 0 for recurse

    bool is_commit() const { return commit_index != 0; }
    static BlockAction commit(int t) { return {t}; }
    static BlockAction recurse() { return {0}; }
    bool operator==(const BlockAction&) const = default;
};

// Block strategy for the infinite game: inspects the opponent's hats
// in blocks of size m, consecutive blocks overlapping by o hats.
// Patterns are indexed as bitmasks, bit (i-1) set iff hat i of the
// block is white.
class BlockMachine {
public:
    BlockMachine(int block_size, int overlap, std::vector<BlockAction> table);

    int block_size() const { return block_size_; }
    int overlap() const { return overlap_; }
    int shift() const { return block_size_ - overlap_; }
    const std::vector<BlockAction>& table() const { return table_; }
    BlockAction action(std::uint32_t pattern_mask) const { return table_[pattern_mask]; }
    bool has_commit() const;

    bool operator==(const BlockMachine&) const = default;

private:
    int block_size_;
    int overlap_;
    std::vector<BlockAction> table_;  // size 2^m
};

struct MachinePair {
    BlockMachine player1;
    BlockMachine player2;

    int block_size() const { return player1.block_size(); }
    int overlap() const { return player1.overlap(); }
    bool symmetric() const { return player1 == player2; }
};

// Closed-form win rate derived from the renewal system.
struct ClosedForm {
    RationalFunction value;
    int system_size = 0;
    // probability both players recurse in one round, from the initial state
    RationalFunction continuation_ratio;
    // same, for every reachable joint state (initial state first)
    std::vector<RationalFunction> state_ratios;
    // solved continuation values of the solo states (one player already
    // committed); for o=0 machines these all equal p
    std::vector<RationalFunction> solo_values;
};

enum class Builtin { S1, S2, S3, S4, FirstWhite, FirstBlack };

MachinePair builtin_machine(Builtin name);
MachinePair builtin_machine(const std::string& name);  // "s1".."s4", "first-white", "first-black"
std::string builtin_name(Builtin name);

BlockMachine dual_machine(const BlockMachine& m);
MachinePair dual_machine(const MachinePair& mp);

// Builds the renewal linear system over first-hat constraint states and
// solves it exactly; the (Free,Free) joint unknown is the win rate.
ClosedForm derive_closed_form(const MachinePair& mp);

// Unrolls the machine over n hats; a player who would recurse past the
// last complete block falls back to own hat 1.
FinitePair truncate_to_finite(const MachinePair& mp, int hats);

// r(p)^k with r the largest per-round joint continuation probability
// over reachable states; bounds |V_truncated - V_closed|.
BigRational tail_bound(const MachinePair& mp, const BigRational& p, int rounds);
BigRational tail_bound(const ClosedForm& cf, const BigRational& p, int rounds);

std::string pattern_to_string(std::uint32_t mask, int block_size);
std::uint32_t pattern_from_string(const std::string& s);

}  // namespace hatlab
