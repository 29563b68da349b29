#include "hatlab/block_machine.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "hatlab/linear_system.hpp"

namespace hatlab {

BlockMachine::BlockMachine(int block_size, int overlap, std::vector<BlockAction> table)
    : block_size_(block_size), overlap_(overlap), table_(std::move(table)) {
    if (block_size < 1 || block_size > kMaxBlockSize)
        throw std::invalid_argument("block size out of range");
    if (overlap != 0 && overlap != 1) throw std::invalid_argument("overlap must be 0 or 1");
    if (overlap >= block_size) throw std::invalid_argument("overlap must be smaller than block size");
    if (table_.size() != (std::size_t{1} << block_size))
        throw std::invalid_argument("block table size mismatch");
    for (const auto& a : table_)
        if (a.commit_index < 0 || a.commit_index > block_size)
            throw std::invalid_argument("commit index out of range");
}

bool BlockMachine::has_commit() const {
    return std::any_of(table_.begin(), table_.end(),
                       [](const BlockAction& a) { return a.is_commit(); });
}

std::string pattern_to_string(std::uint32_t mask, int block_size) {
    std::string s(block_size, 'B');
    for (int i = 0; i < block_size; ++i)
        if ((mask >> i) & 1) s[i] = 'W';
    return s;
}

std::uint32_t pattern_from_string(const std::string& s) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 'W')
            mask |= 1u << i;
        else if (s[i] != 'B')
            throw std::invalid_argument("pattern must be over {W,B}: " + s);
    }
    return mask;
}

namespace {

std::vector<BlockAction> table_one_actions() {
    using A = BlockAction;
    return {A::recurse(), A::commit(1), A::commit(3), A::commit(1),
            A::commit(2), A::commit(2), A::commit(3), A::recurse()};
}

std::vector<BlockAction> table_seven_actions() {
    using A = BlockAction;
    return {A::recurse(), A::commit(2), A::commit(1), A::commit(1),
            A::commit(3), A::commit(2), A::commit(3), A::recurse()};
}

MachinePair symmetric(BlockMachine m) {
    return {m, m};
}

}  // namespace

MachinePair builtin_machine(Builtin name) {
    using A = BlockAction;
    switch (name) {
        case Builtin::S1:
            return symmetric(BlockMachine(3, 1, table_one_actions()));
        case Builtin::S2:
            return symmetric(BlockMachine(3, 0, table_one_actions()));
        case Builtin::S3:
            return dual_machine(builtin_machine(Builtin::S1));
        case Builtin::S4:
            return symmetric(BlockMachine(3, 1, table_seven_actions()));
        case Builtin::FirstWhite:
            return symmetric(BlockMachine(1, 0, {A::recurse(), A::commit(1)}));
        case Builtin::FirstBlack:
            return symmetric(BlockMachine(1, 0, {A::commit(1), A::recurse()}));
    }
    throw std::invalid_argument("unknown builtin machine");
}

MachinePair builtin_machine(const std::string& name) {
    if (name == "s1" || name == "S1") return builtin_machine(Builtin::S1);
    if (name == "s2" || name == "S2") return builtin_machine(Builtin::S2);
    if (name == "s3" || name == "S3") return builtin_machine(Builtin::S3);
    if (name == "s4" || name == "S4") return builtin_machine(Builtin::S4);
    if (name == "first-white") return builtin_machine(Builtin::FirstWhite);
    if (name == "first-black") return builtin_machine(Builtin::FirstBlack);
    throw std::invalid_argument("unknown builtin machine: " + name);
}

std::string builtin_name(Builtin name) {
    switch (name) {
        case Builtin::S1: return "s1";
        case Builtin::S2: return "s2";
        case Builtin::S3: return "s3";
        case Builtin::S4: return "s4";
        case Builtin::FirstWhite: return "first-white";
        case Builtin::FirstBlack: return "first-black";
    }
    return "?";
}

BlockMachine dual_machine(const BlockMachine& m) {
    const std::uint32_t patterns = 1u << m.block_size();
    std::vector<BlockAction> table(patterns);
    for (std::uint32_t pat = 0; pat < patterns; ++pat)
        table[pat] = m.action(~pat & (patterns - 1));
    return BlockMachine(m.block_size(), m.overlap(), std::move(table));
}

MachinePair dual_machine(const MachinePair& mp) {
    return {dual_machine(mp.player1), dual_machine(mp.player2)};
}

namespace {

// First-hat constraint on a block.
enum class Constraint : int { Free = 0, White = 1, Black = 2 };

struct StateKey {
    int kind;    // 0 = joint, 1 = solo
    int player;  // solo only: 1 or 2 (continuing player)
    Constraint a;
    Constraint b;
    auto operator<=>(const StateKey&) const = default;
};

Constraint color_of(bool white) {
    return white ? Constraint::White : Constraint::Black;
}

class RenewalBuilder {
public:
    explicit RenewalBuilder(const MachinePair& mp) : mp_(mp), m_(mp.block_size()), o_(mp.overlap()) {
        // weights p^w q^b as rational functions
        RationalFunction p = RationalFunction::variable();
        RationalFunction q = RationalFunction::one_minus_p();
        pw_.push_back(RationalFunction::constant(BigRational(1)));
        qw_.push_back(RationalFunction::constant(BigRational(1)));
        for (int i = 1; i <= m_; ++i) {
            pw_.push_back(pw_.back() * p);
            qw_.push_back(qw_.back() * q);
        }
    }

    ClosedForm run() {
        const int root = state_index({0, 0, Constraint::Free, Constraint::Free});
        while (!work_.empty()) {
            StateKey key = work_.back();
            work_.pop_back();
            if (key.kind == 0)
                build_joint(key);
            else
                build_solo(key);
        }
        const std::size_t n = index_.size();
        LinearSystem sys;
        sys.matrix.assign(n, std::vector<RationalFunction>(n));
        sys.rhs.resize(n);
        for (std::size_t s = 0; s < n; ++s) {
            sys.matrix[s][s] = RationalFunction::constant(BigRational(1));
            for (const auto& [t, c] : rows_[s].coeffs) sys.matrix[s][t] -= c;
            sys.rhs[s] = rows_[s].constant;
        }
        auto x = solve_linear_system(std::move(sys));

        ClosedForm cf;
        cf.value = x[root];
        cf.system_size = static_cast<int>(n);
        for (const auto& [key, id] : index_)
            if (key.kind == 1) cf.solo_values.push_back(x[id]);
        cf.state_ratios = joint_ratios_;
        cf.continuation_ratio = joint_ratios_.empty() ? RationalFunction() : joint_ratios_.front();
        return cf;
    }

private:
    struct Row {
        std::map<int, RationalFunction> coeffs;
        RationalFunction constant;
    };

    int state_index(const StateKey& key) {
        auto it = index_.find(key);
        if (it != index_.end()) return it->second;
        int id = static_cast<int>(index_.size());
        index_.emplace(key, id);
        rows_.emplace_back();
        work_.push_back(key);
        return id;
    }

    bool consistent(std::uint32_t block, Constraint c) const {
        if (c == Constraint::Free) return true;
        return (block & 1) == (c == Constraint::White ? 1u : 0u);
    }

    RationalFunction block_weight(std::uint32_t block, Constraint c) const {
        int whites = std::popcount(block);
        int start = (c == Constraint::Free) ? 0 : 1;
        if (start && (block & 1)) --whites;
        int free_hats = m_ - start;
        return pw_[whites] * qw_[free_hats - whites];
    }

    bool block_white_at(std::uint32_t block, int t) const { return (block >> (t - 1)) & 1; }
    Constraint last_hat(std::uint32_t block) const {
        return color_of((block >> (m_ - 1)) & 1);
    }

    void add(Row& row, int target, const RationalFunction& w) {
        auto [it, inserted] = row.coeffs.emplace(target, w);
        if (!inserted) it->second += w;
    }

    void build_joint(const StateKey& key) {
        const int self = index_.at(key);
        Row row;
        RationalFunction recurse_weight;
        const std::uint32_t patterns = 1u << m_;
        for (std::uint32_t b1 = 0; b1 < patterns; ++b1) {
            if (!consistent(b1, key.a)) continue;
            RationalFunction w1 = block_weight(b1, key.a);
            for (std::uint32_t b2 = 0; b2 < patterns; ++b2) {
                if (!consistent(b2, key.b)) continue;
                RationalFunction w = w1 * block_weight(b2, key.b);
                BlockAction a1 = mp_.player1.action(b2);  // player 1 sees player 2's block
                BlockAction a2 = mp_.player2.action(b1);
                if (a1.is_commit() && a2.is_commit()) {
                    if (block_white_at(b1, a1.commit_index) && block_white_at(b2, a2.commit_index))
                        row.constant += w;
                } else if (a1.is_commit()) {
                    if (block_white_at(b1, a1.commit_index))
                        add(row, solo_state(2, b2, b1), w);
                } else if (a2.is_commit()) {
                    if (block_white_at(b2, a2.commit_index))
                        add(row, solo_state(1, b1, b2), w);
                } else {
                    recurse_weight += w;
                    if (o_ == 1)
                        add(row, state_index({0, 0, last_hat(b1), last_hat(b2)}), w);
                    else
                        add(row, state_index({0, 0, Constraint::Free, Constraint::Free}), w);
                }
            }
        }
        rows_[self] = std::move(row);
        joint_ratios_.push_back(recurse_weight);
    }

    // Continuing player `player` recursed: own block `own`, opponent
    // (already committed) block `opp`.
    int solo_state(int player, std::uint32_t own, std::uint32_t opp) {
        if (o_ == 1)
            return state_index({1, player, last_hat(own), last_hat(opp)});
        return state_index({1, player, Constraint::Free, Constraint::Free});
    }

    void build_solo(const StateKey& key) {
        const int self = index_.at(key);
        const BlockMachine& machine = key.player == 1 ? mp_.player1 : mp_.player2;
        Row row;
        const std::uint32_t patterns = 1u << m_;
        for (std::uint32_t bo = 0; bo < patterns; ++bo) {
            if (!consistent(bo, key.b)) continue;
            RationalFunction w = block_weight(bo, key.b);
            BlockAction act = machine.action(bo);
            if (act.is_commit()) {
                if (act.commit_index <= o_) {
                    // committed on the overlap hat, whose color is the constraint
                    if (key.a == Constraint::White)
                        row.constant += w;
                    else if (key.a == Constraint::Free)
                        row.constant += w * pw_[1];
                } else {
                    row.constant += w * pw_[1];  // fresh own hat
                }
            } else if (o_ == 1) {
                // own overlap hat of the next block is a fresh hat
                Constraint bp = last_hat(bo);
                add(row, state_index({1, key.player, Constraint::White, bp}), pw_[1] * w);
                add(row, state_index({1, key.player, Constraint::Black, bp}), qw_[1] * w);
            } else {
                add(row, state_index({1, key.player, Constraint::Free, Constraint::Free}), w);
            }
        }
        rows_[self] = std::move(row);
    }

    const MachinePair& mp_;
    int m_, o_;
    std::vector<RationalFunction> pw_, qw_;
    std::map<StateKey, int> index_;
    std::vector<Row> rows_;
    std::vector<StateKey> work_;
    std::vector<RationalFunction> joint_ratios_;
};

}  // namespace

ClosedForm derive_closed_form(const MachinePair& mp) {
    if (mp.player1.block_size() != mp.player2.block_size() ||
        mp.player1.overlap() != mp.player2.overlap())
        throw std::invalid_argument("machine pair block size/overlap mismatch");
    if (!mp.player1.has_commit() || !mp.player2.has_commit())
        throw DomainError("non-committing strategy");
    return RenewalBuilder(mp).run();
}

FinitePair truncate_to_finite(const MachinePair& mp, int hats) {
    const int m = mp.block_size();
    if (hats < m) throw DomainError("hat count below block size");
    if (hats > kMaxHats) throw std::invalid_argument("hat count out of range");
    auto unroll = [&](const BlockMachine& machine) {
        const std::uint32_t configs = 1u << hats;
        std::vector<std::uint8_t> table(configs, 1);  // fallback: own hat 1
        for (std::uint32_t mask = 0; mask < configs; ++mask) {
            int s = 0;
            while (s + m <= hats) {
                std::uint32_t block = (mask >> s) & ((1u << m) - 1);
                BlockAction act = machine.action(block);
                if (act.is_commit()) {
                    table[mask] = static_cast<std::uint8_t>(s + act.commit_index);
                    break;
                }
                s += machine.shift();
            }
        }
        return FiniteStrategy(hats, std::move(table));
    };
    return {unroll(mp.player1), unroll(mp.player2)};
}

BigRational tail_bound(const ClosedForm& cf, const BigRational& p, int rounds) {
    if (p <= 0 || p >= 1) throw DomainError("degenerate probability");
    if (rounds < 0) throw std::invalid_argument("negative round count");
    BigRational r(0);
    for (const auto& ratio : cf.state_ratios) r = std::max(r, ratio.eval(p));
    BigRational out(1);
    for (int i = 0; i < rounds; ++i) out *= r;
    out.canonicalize();
    return out;
}

BigRational tail_bound(const MachinePair& mp, const BigRational& p, int rounds) {
    return tail_bound(derive_closed_form(mp), p, rounds);
}

}  // namespace hatlab
