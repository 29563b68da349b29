#include "hatlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <limits>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "hatlab/io.hpp"

namespace hatlab {

namespace {

using u128 = unsigned __int128;

BigInt u128_to_mpz(u128 v) {
    BigInt hi(static_cast<unsigned long>(v >> 64));
    BigInt lo(static_cast<unsigned long>(v & 0xFFFFFFFFFFFFFFFFull));
    return (hi << 64) + lo;
}

// Integer weights for exact objective comparison at p = a/b:
// weight(config) = a^whites * (b-a)^blacks, objective = sum over winning
// pairs of the two weights; V(p) = objective / b^(2n).
struct WeightTable {
    std::vector<u128> per_config;   // by mask
    std::vector<u128> per_total;    // by total white count w: a^w (b-a)^(2n-w)
    BigInt denom;                   // b^(2n)

    WeightTable(int n, const BigRational& p) {
        if (p < 0 || p > 1) throw DomainError("probability out of range");
        BigInt a = p.get_num(), b = p.get_den();
        BigInt c = b - a;
        // overflow guard for the u128 fast path
        double lg = mpz_sizeinbase(std::max(std::max(a, c), BigInt(1)).get_mpz_t(), 2);
        if (2 * n * lg + 2 * n + 2 > 126)
            throw std::invalid_argument("probability denominator too large for exhaustive scan");
        auto powi = [](const BigInt& base, int e) {
            u128 r = 1;
            u128 bb = base.get_ui();
            for (int i = 0; i < e; ++i) r *= bb;
            return r;
        };
        per_config.resize(std::size_t{1} << n);
        for (std::uint32_t m = 0; m < per_config.size(); ++m) {
            int w = std::popcount(m);
            per_config[m] = powi(a, w) * powi(c, n - w);
        }
        per_total.resize(2 * n + 1);
        for (int w = 0; w <= 2 * n; ++w) per_total[w] = powi(a, w) * powi(c, 2 * n - w);
        mpz_pow_ui(denom.get_mpz_t(), b.get_mpz_t(), 2 * n);
    }

    BigRational value(u128 objective) const {
        return make_rational(u128_to_mpz(objective), denom);
    }

    u128 objective(const WinCountVector& cv) const {
        u128 acc = 0;
        for (std::size_t w = 0; w < cv.counts.size(); ++w)
            acc += u128(cv.counts[w]) * per_total[w];
        return acc;
    }
};

std::vector<std::uint8_t> table_from_index(std::uint64_t idx, int n, int entries) {
    std::vector<std::uint8_t> t(entries);
    for (int i = 0; i < entries; ++i) {
        t[i] = static_cast<std::uint8_t>(idx % n + 1);
        idx /= n;
    }
    return t;
}

std::uint64_t pow_u64(std::uint64_t base, int e) {
    std::uint64_t r = 1;
    while (e--) r *= base;
    return r;
}

struct ChunkResult {
    u128 best = 0;
    bool any = false;
    std::uint64_t count = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> maximizers;  // capped
    bool maximizers_complete = true;
};

constexpr std::size_t kMaximizerCap = 1 << 17;

void record_maximizer(ChunkResult& r, std::uint64_t i1, std::uint64_t i2) {
    if (r.maximizers.size() < kMaximizerCap)
        r.maximizers.emplace_back(i1, i2);
    else
        r.maximizers_complete = false;
}

void merge_chunk(ChunkResult& into, ChunkResult&& from) {
    if (!from.any) return;
    if (!into.any || from.best > into.best) {
        into = std::move(from);
        return;
    }
    if (from.best < into.best) return;
    into.count += from.count;
    for (auto& m : from.maximizers) {
        if (into.maximizers.size() < kMaximizerCap)
            into.maximizers.push_back(m);
        else
            into.maximizers_complete = false;
    }
    into.maximizers_complete = into.maximizers_complete && from.maximizers_complete;
}

// Scan of f2 for a fixed f1 using per-(x1, choice) partial sums; the f2
// odometer updates the objective incrementally.
ChunkResult scan_inner(const std::vector<std::uint8_t>& f1, std::uint64_t f1_idx, int n,
                       const WeightTable& wt) {
    const std::uint32_t configs = 1u << n;
    const std::uint64_t tables = pow_u64(n, configs);
    // S[x1][t-1] = sum over x2 with (x1 has bit f1(x2)) and (x2 has bit t) of u(x2)
    std::vector<u128> S(configs * n, 0);
    for (std::uint32_t x2 = 0; x2 < configs; ++x2) {
        const int need = f1[x2];
        for (std::uint32_t x1 = 0; x1 < configs; ++x1) {
            if (!((x1 >> (need - 1)) & 1)) continue;
            for (int t = 1; t <= n; ++t)
                if ((x2 >> (t - 1)) & 1) S[x1 * n + t - 1] += wt.per_config[x2];
        }
    }
    std::vector<std::uint8_t> f2(configs, 1);
    u128 obj = 0;
    for (std::uint32_t x1 = 0; x1 < configs; ++x1)
        obj += wt.per_config[x1] * S[x1 * n + 0];

    ChunkResult res;
    std::uint64_t f2_idx = 0;
    for (;;) {
        if (!res.any || obj > res.best) {
            res.any = true;
            res.best = obj;
            res.count = 1;
            res.maximizers.clear();
            res.maximizers_complete = true;
            record_maximizer(res, f1_idx, f2_idx);
        } else if (obj == res.best) {
            ++res.count;
            record_maximizer(res, f1_idx, f2_idx);
        }
        // odometer increment with incremental objective update
        ++f2_idx;
        if (f2_idx >= tables) break;
        std::uint32_t pos = 0;
        while (true) {
            const std::uint8_t old = f2[pos];
            if (old < n) {
                f2[pos] = old + 1;
                obj += wt.per_config[pos] * (S[pos * n + old] - S[pos * n + old - 1]);
                break;
            }
            f2[pos] = 1;
            obj += wt.per_config[pos] * S[pos * n + 0];
            obj -= wt.per_config[pos] * S[pos * n + old - 1];
            ++pos;
        }
    }
    return res;
}

FinitePair pair_from_indices(std::uint64_t i1, std::uint64_t i2, int n) {
    const int entries = 1 << n;
    return {FiniteStrategy(n, table_from_index(i1, n, entries)),
            FiniteStrategy(n, table_from_index(i2, n, entries))};
}

std::uint64_t count_classes(const std::vector<FinitePair>& pairs) {
    std::set<std::vector<std::uint8_t>> keys;
    for (const auto& pr : pairs) {
        FinitePair c = canonical_form(pr);
        std::vector<std::uint8_t> k = c.player1.table();
        k.insert(k.end(), c.player2.table().begin(), c.player2.table().end());
        keys.insert(std::move(k));
    }
    return keys.size();
}

}  // namespace

std::uint64_t search_config_hash(const SearchConfig& cfg) {
    std::string s = std::to_string(cfg.hats) + "|" + rational_to_string(cfg.p) + "|" +
                    std::to_string(static_cast<int>(cfg.mode)) + "|" +
                    std::to_string(cfg.symmetric) + "|" + std::to_string(cfg.seed) + "|" +
                    std::to_string(cfg.restarts);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

SearchReport exhaustive_pairs(const SearchConfig& cfg) {
    const int n = cfg.hats;
    if (n < 1) throw std::invalid_argument("hat count out of range");
    if (n > 3) {
        BigInt tables, space;
        mpz_ui_pow_ui(tables.get_mpz_t(), n, 1u << n);
        space = tables * tables;
        throw std::invalid_argument("pair space too large for exhaustive scan: " +
                                    space.get_str() + " pairs");
    }
    const auto t0 = std::chrono::steady_clock::now();
    WeightTable wt(n, cfg.p);
    const std::uint32_t configs = 1u << n;
    const std::uint64_t tables = pow_u64(n, configs);

    const unsigned workers = std::max(1u, cfg.workers);
    std::vector<ChunkResult> partials(workers);
    std::vector<std::thread> threads;
    for (unsigned wk = 0; wk < workers; ++wk) {
        std::uint64_t lo = tables * wk / workers;
        std::uint64_t hi = tables * (wk + 1) / workers;
        threads.emplace_back([&, wk, lo, hi] {
            ChunkResult local;
            for (std::uint64_t i1 = lo; i1 < hi; ++i1) {
                auto f1 = table_from_index(i1, n, configs);
                merge_chunk(local, scan_inner(f1, i1, n, wt));
            }
            partials[wk] = std::move(local);
        });
    }
    for (auto& t : threads) t.join();
    ChunkResult total;
    for (auto& part : partials) merge_chunk(total, std::move(part));

    SearchReport rep;
    rep.best_value = wt.value(total.best);
    rep.optimum_count = total.count;
    rep.iterations = tables * tables;
    for (std::size_t i = 0; i < total.maximizers.size() && rep.witnesses.size() < 10; ++i)
        rep.witnesses.push_back(
            pair_from_indices(total.maximizers[i].first, total.maximizers[i].second, n));
    if (!rep.witnesses.empty()) rep.best_win_counts = evaluate_pair(rep.witnesses.front());
    if (n == 3 && total.maximizers_complete) {
        std::vector<FinitePair> maxi;
        maxi.reserve(total.maximizers.size());
        for (auto& [i1, i2] : total.maximizers) maxi.push_back(pair_from_indices(i1, i2, n));
        rep.class_count = count_classes(maxi);
    }
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

namespace {

// Symmetric objective of table f, and the incremental update used by
// the n=4 scan.
u128 symmetric_objective(const std::vector<std::uint8_t>& f, int n, const WeightTable& wt) {
    const std::uint32_t configs = 1u << n;
    u128 obj = 0;
    for (std::uint32_t x1 = 0; x1 < configs; ++x1)
        for (std::uint32_t x2 = 0; x2 < configs; ++x2)
            if (((x1 >> (f[x2] - 1)) & 1) && ((x2 >> (f[x1] - 1)) & 1))
                obj += wt.per_config[x1] * wt.per_config[x2];
    return obj;
}

// Contribution of all pairs with x1 == e or x2 == e, given f[e] already
// holds the choice under consideration.
u128 entry_contribution(const std::vector<std::uint8_t>& f, int n, const WeightTable& wt,
                        std::uint32_t e) {
    const std::uint32_t configs = 1u << n;
    const int t = f[e];
    u128 s = 0;
    for (std::uint32_t y = 0; y < configs; ++y)
        if (((y >> (t - 1)) & 1) && ((e >> (f[y] - 1)) & 1)) s += wt.per_config[y];
    u128 contrib = 2 * s * wt.per_config[e];
    if ((e >> (t - 1)) & 1)  // diagonal pair (e,e) was counted twice
        contrib -= wt.per_config[e] * wt.per_config[e];
    return contrib;
}

struct SymmetricScanState {
    std::vector<std::uint8_t> f;
    u128 obj = 0;
};

// Scans table indices [lo, hi) with odometer increments and O(2^n)
// delta updates per digit change.
ChunkResult scan_symmetric_range(std::uint64_t lo, std::uint64_t hi, int n,
                                 const WeightTable& wt) {
    const std::uint32_t configs = 1u << n;
    SymmetricScanState st;
    st.f = table_from_index(lo, n, configs);
    st.obj = symmetric_objective(st.f, n, wt);
    ChunkResult res;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        if (!res.any || st.obj > res.best) {
            res.any = true;
            res.best = st.obj;
            res.count = 1;
            res.maximizers.clear();
            res.maximizers_complete = true;
            record_maximizer(res, idx, idx);
        } else if (st.obj == res.best) {
            ++res.count;
            record_maximizer(res, idx, idx);
        }
        if (idx + 1 >= hi) break;
        std::uint32_t pos = 0;
        while (true) {
            const std::uint8_t old = st.f[pos];
            const std::uint8_t next = old < n ? old + 1 : 1;
            st.obj -= entry_contribution(st.f, n, wt, pos);
            st.f[pos] = next;
            st.obj += entry_contribution(st.f, n, wt, pos);
            if (next != 1) break;
            ++pos;
        }
    }
    return res;
}

}  // namespace

SearchReport exhaustive_symmetric(const SearchConfig& cfg) {
    const int n = cfg.hats;
    if (n < 1 || n > 4) throw std::invalid_argument("symmetric exhaustive scan supports n <= 4");
    const auto t0 = std::chrono::steady_clock::now();
    WeightTable wt(n, cfg.p);
    const std::uint32_t configs = 1u << n;
    const std::uint64_t tables = pow_u64(n, configs);

    if (n == 4 && cfg.checkpoint_path.empty())
        throw std::invalid_argument("n=4 symmetric scan requires a checkpoint path");
    const bool checkpointing = !cfg.checkpoint_path.empty();

    ChunkResult total;
    std::uint64_t cursor = 0;
    const std::uint64_t config_hash = search_config_hash(cfg);
    if (checkpointing) {
        if (auto resumed = load_search_checkpoint(cfg.checkpoint_path, config_hash)) {
            cursor = resumed->cursor;
            total.any = resumed->any;
            total.best = resumed->best_objective;
            total.count = resumed->optimum_count;
            for (std::uint64_t w : resumed->witness_indices) record_maximizer(total, w, w);
            total.maximizers_complete = false;  // the full maximizer list is not checkpointed
        }
    }

    const unsigned workers = std::max(1u, cfg.workers);
    const std::uint64_t interval = checkpointing ? std::max<std::uint64_t>(1, cfg.checkpoint_interval)
                                                 : tables;
    while (cursor < tables) {
        const std::uint64_t chunk_hi = std::min(tables, cursor + interval);
        std::vector<ChunkResult> partials(workers);
        std::vector<std::thread> threads;
        for (unsigned wk = 0; wk < workers; ++wk) {
            std::uint64_t lo = cursor + (chunk_hi - cursor) * wk / workers;
            std::uint64_t hi = cursor + (chunk_hi - cursor) * (wk + 1) / workers;
            threads.emplace_back([&, wk, lo, hi] {
                if (lo < hi) partials[wk] = scan_symmetric_range(lo, hi, n, wt);
            });
        }
        for (auto& t : threads) t.join();
        for (auto& part : partials) merge_chunk(total, std::move(part));
        cursor = chunk_hi;
        if (checkpointing && cursor < tables) {
            SearchCheckpoint cp;
            cp.config_hash = config_hash;
            cp.cursor = cursor;
            cp.any = total.any;
            cp.best_objective = total.best;
            cp.best_value = wt.value(total.best);
            cp.optimum_count = total.count;
            for (std::size_t i = 0; i < total.maximizers.size() && cp.witness_indices.size() < 10; ++i)
                cp.witness_indices.push_back(total.maximizers[i].first);
            cp.best_pair = total.maximizers.empty()
                               ? std::optional<FinitePair>{}
                               : pair_from_indices(total.maximizers[0].first,
                                                   total.maximizers[0].first, n);
            save_search_checkpoint(cfg.checkpoint_path, cp);
        }
    }

    SearchReport rep;
    rep.best_value = wt.value(total.best);
    rep.optimum_count = total.count;
    rep.iterations = tables;
    for (std::size_t i = 0; i < total.maximizers.size() && rep.witnesses.size() < 10; ++i)
        rep.witnesses.push_back(pair_from_indices(total.maximizers[i].first,
                                                  total.maximizers[i].first, n));
    if (!rep.witnesses.empty()) rep.best_win_counts = evaluate_pair(rep.witnesses.front());
    if (n <= 3 && total.maximizers_complete) {
        std::vector<FinitePair> maxi;
        for (auto& [i1, i2] : total.maximizers) maxi.push_back(pair_from_indices(i1, i1, n));
        rep.class_count = count_classes(maxi);
    }
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

WinCountVector delta_evaluate(const FinitePair& pair, const WinCountVector& counts,
                              int player, std::uint32_t input_mask, int new_choice) {
    const int n = pair.hats();
    if (new_choice < 1 || new_choice > n) throw std::invalid_argument("choice out of range");
    const std::uint32_t configs = 1u << n;
    WinCountVector out = counts;
    const int fixed_w = std::popcount(input_mask);
    if (player == 1) {
        // player 1's entry at opponent config input_mask: pairs (x1, input_mask)
        const int old_choice = pair.player1.choice(input_mask);
        if (old_choice == new_choice) return out;
        for (std::uint32_t x1 = 0; x1 < configs; ++x1) {
            if (!((input_mask >> (pair.player2.choice(x1) - 1)) & 1)) continue;
            const bool won = (x1 >> (old_choice - 1)) & 1;
            const bool wins = (x1 >> (new_choice - 1)) & 1;
            if (won == wins) continue;
            const std::size_t w = std::popcount(x1) + fixed_w;
            if (wins)
                ++out.counts[w];
            else
                --out.counts[w];
        }
    } else if (player == 2) {
        const int old_choice = pair.player2.choice(input_mask);
        if (old_choice == new_choice) return out;
        for (std::uint32_t x2 = 0; x2 < configs; ++x2) {
            if (!((input_mask >> (pair.player1.choice(x2) - 1)) & 1)) continue;
            const bool won = (x2 >> (old_choice - 1)) & 1;
            const bool wins = (x2 >> (new_choice - 1)) & 1;
            if (won == wins) continue;
            const std::size_t w = std::popcount(x2) + fixed_w;
            if (wins)
                ++out.counts[w];
            else
                --out.counts[w];
        }
    } else {
        throw std::invalid_argument("player must be 1 or 2");
    }
    return out;
}

namespace {

std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = g();
    } while (v >= limit);
    return v % bound;
}

struct RestartResult {
    FinitePair pair;
    WinCountVector counts;
    u128 obj = 0;
    std::uint64_t iterations = 0;
    bool converged = false;
};

RestartResult run_restart(const SearchConfig& cfg, std::uint64_t restart_index,
                          const WeightTable& wt) {
    const int n = cfg.hats;
    const std::uint32_t configs = 1u << n;
    std::mt19937_64 rng(cfg.seed ^ restart_index);
    auto random_table = [&] {
        std::vector<std::uint8_t> t(configs);
        for (auto& e : t) e = static_cast<std::uint8_t>(uniform_below(rng, n) + 1);
        return FiniteStrategy(n, std::move(t));
    };
    FiniteStrategy f1 = random_table();
    FiniteStrategy f2 = cfg.symmetric ? f1 : random_table();
    RestartResult st{{f1, f2}, evaluate_pair({f1, f2}), 0, 0, false};
    st.obj = wt.objective(st.counts);

    std::uint64_t sideways_budget =
        cfg.sideways_moves ? 2ull * configs * static_cast<std::uint64_t>(n) : 0;
    const int players = cfg.symmetric ? 1 : 2;
    for (;;) {
        bool moved = false;
        bool sideways_taken = false;
        for (int player = 1; player <= players && !moved; ++player) {
            for (std::uint32_t e = 0; e < configs && !moved; ++e) {
                const int cur =
                    player == 1 ? st.pair.player1.choice(e) : st.pair.player2.choice(e);
                for (int t = 1; t <= n && !moved; ++t) {
                    if (t == cur) continue;
                    if (cfg.max_iterations && st.iterations >= cfg.max_iterations)
                        return st;
                    ++st.iterations;
                    WinCountVector cand = delta_evaluate(st.pair, st.counts, player, e, t);
                    FinitePair cand_pair = st.pair;
                    if (cfg.symmetric) {
                        // both players share the table: apply the same edit twice
                        cand_pair.player1.set_choice(e, t);
                        cand = delta_evaluate(cand_pair, cand, 2, e, t);
                        cand_pair.player2.set_choice(e, t);
                    } else if (player == 1) {
                        cand_pair.player1.set_choice(e, t);
                    } else {
                        cand_pair.player2.set_choice(e, t);
                    }
                    const u128 cand_obj = wt.objective(cand);
                    bool accept = cand_obj > st.obj;
                    if (!accept && cfg.sideways_moves && cand_obj == st.obj &&
                        sideways_budget > 0) {
                        accept = true;
                        sideways_taken = true;
                        --sideways_budget;
                    }
                    if (accept) {
                        st.pair = std::move(cand_pair);
                        st.counts = std::move(cand);
                        st.obj = cand_obj;
                        moved = true;
                    }
                }
            }
        }
        if (!moved) {
            st.converged = true;
            return st;
        }
        if (sideways_taken && sideways_budget == 0) {
            st.converged = false;
            return st;
        }
    }
}

}  // namespace

SearchReport hill_climb(const SearchConfig& cfg) {
    const int n = cfg.hats;
    if (n < 1 || n > kMaxHats) throw std::invalid_argument("hat count out of range");
    if (cfg.restarts < 1) throw std::invalid_argument("hillclimb needs at least one restart");
    const auto t0 = std::chrono::steady_clock::now();
    WeightTable wt(n, cfg.p);

    const unsigned workers = std::max(1u, cfg.workers);
    std::vector<std::optional<RestartResult>> results(cfg.restarts);
    std::vector<std::thread> threads;
    std::atomic<std::uint64_t> next{0};
    for (unsigned wk = 0; wk < workers; ++wk) {
        threads.emplace_back([&] {
            for (;;) {
                const std::uint64_t r = next.fetch_add(1);
                if (r >= cfg.restarts) return;
                results[r] = run_restart(cfg, r, wt);
            }
        });
    }
    for (auto& t : threads) t.join();

    SearchReport rep;
    u128 best = 0;
    bool any = false;
    for (std::uint64_t r = 0; r < cfg.restarts; ++r) {
        const auto& res = *results[r];
        rep.iterations += res.iterations;
        if (!any || res.obj > best) {
            any = true;
            best = res.obj;
            rep.witnesses.clear();
            rep.witnesses.push_back(res.pair);
            rep.best_win_counts = res.counts;
        } else if (res.obj == best && rep.witnesses.size() < 10) {
            rep.witnesses.push_back(res.pair);
        }
    }
    rep.best_value = wt.value(best);
    rep.optimum_count = 0;
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace hatlab
