#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hatlab/block_machine.hpp"
#include "hatlab/game.hpp"
#include "hatlab/monte_carlo.hpp"
#include "hatlab/search.hpp"

namespace hatlab {

// File-level failures; the CLI maps this to exit code 4.
struct IOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Strategy-pair file: {"hats": n, "player1": [...], "player2": [...]},
// entries 1-based, index i holds the choice for opponent mask i-1.
std::string pair_to_json(const FinitePair& pair);
FinitePair pair_from_json(const std::string& text);

// Block-machine file: {"block_size": m, "overlap": o,
// "table": {"WWB": 1, "WWW": "recurse", ...}}, patterns over {W,B} with
// position 1 leftmost. A symmetric pair may be a single machine with
// "symmetric": true; otherwise {"player1": {...}, "player2": {...}}.
std::string machine_pair_to_json(const MachinePair& mp);
MachinePair machine_pair_from_json(const std::string& text);

// True when the JSON document looks like a finite strategy-pair file
// (has a "hats" field) rather than a block-machine file.
bool json_is_finite_pair(const std::string& text);

std::string simulation_report_to_json(const SimulationReport& rep);
std::string search_report_to_json(const SearchReport& rep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
// write to a temp file, then rename
void write_file_atomic(const std::string& path, const std::string& content);

struct SearchCheckpoint {
    std::uint64_t config_hash = 0;
    std::uint64_t cursor = 0;
    bool any = false;
    unsigned __int128 best_objective = 0;
    BigRational best_value;
    std::uint64_t optimum_count = 0;
    std::optional<FinitePair> best_pair;
    std::vector<std::uint64_t> witness_indices;
    std::string rng_state;  // unused by exhaustive scans
};

void save_search_checkpoint(const std::string& path, const SearchCheckpoint& cp);
// nullopt if the file does not exist; throws on malformed content or a
// config-hash mismatch.
std::optional<SearchCheckpoint> load_search_checkpoint(const std::string& path,
                                                       std::uint64_t expected_hash);

}  // namespace hatlab
