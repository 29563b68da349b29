#include "hatlab/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hatlab {

using nlohmann::json;

namespace {

using u128 = unsigned __int128;

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u128 u128_from_string(const std::string& s) {
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw IOError("malformed 128-bit integer: " + s);
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    return v;
}

json strategy_to_json(const FiniteStrategy& s) {
    json arr = json::array();
    for (auto t : s.table()) arr.push_back(static_cast<int>(t));
    return arr;
}

FiniteStrategy strategy_from_json(int hats, const json& arr) {
    std::vector<std::uint8_t> table;
    for (const auto& e : arr) table.push_back(static_cast<std::uint8_t>(e.get<int>()));
    return FiniteStrategy(hats, std::move(table));
}

json machine_to_json(const BlockMachine& m) {
    json tab = json::object();
    for (std::uint32_t pat = 0; pat < m.table().size(); ++pat) {
        const std::string key = pattern_to_string(pat, m.block_size());
        const BlockAction a = m.action(pat);
        if (a.is_commit())
            tab[key] = a.commit_index;
        else
            tab[key] = "recurse";
    }
    return json{{"block_size", m.block_size()}, {"overlap", m.overlap()}, {"table", tab}};
}

BlockMachine machine_from_json(const json& j) {
    const int m = j.at("block_size").get<int>();
    const int o = j.at("overlap").get<int>();
    std::vector<BlockAction> table(std::size_t{1} << m, BlockAction::recurse());
    std::vector<bool> seen(table.size(), false);
    for (const auto& [key, val] : j.at("table").items()) {
        if (static_cast<int>(key.size()) != m)
            throw IOError("pattern length does not match block size: " + key);
        const std::uint32_t pat = pattern_from_string(key);
        if (val.is_string()) {
            if (val.get<std::string>() != "recurse")
                throw IOError("unknown action: " + val.get<std::string>());
            table[pat] = BlockAction::recurse();
        } else {
            table[pat] = BlockAction::commit(val.get<int>());
        }
        seen[pat] = true;
    }
    for (bool s : seen)
        if (!s) throw IOError("block table is not total over all patterns");
    return BlockMachine(m, o, std::move(table));
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw IOError("malformed JSON");
    return j;
}

}  // namespace

std::string pair_to_json(const FinitePair& pair) {
    json j{{"hats", pair.hats()},
           {"player1", strategy_to_json(pair.player1)},
           {"player2", strategy_to_json(pair.player2)}};
    return j.dump(2) + "\n";
}

FinitePair pair_from_json(const std::string& text) {
    try {
        json j = parse(text);
        const int n = j.at("hats").get<int>();
        return {strategy_from_json(n, j.at("player1")), strategy_from_json(n, j.at("player2"))};
    } catch (const json::exception& e) {
        throw IOError(std::string("malformed strategy-pair file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw IOError(std::string("malformed strategy-pair file: ") + e.what());
    }
}

std::string machine_pair_to_json(const MachinePair& mp) {
    json j;
    if (mp.symmetric()) {
        j = machine_to_json(mp.player1);
        j["symmetric"] = true;
    } else {
        j = json{{"player1", machine_to_json(mp.player1)},
                 {"player2", machine_to_json(mp.player2)}};
    }
    return j.dump(2) + "\n";
}

MachinePair machine_pair_from_json(const std::string& text) {
    try {
        json j = parse(text);
        if (j.contains("player1")) {
            return {machine_from_json(j.at("player1")), machine_from_json(j.at("player2"))};
        }
        BlockMachine m = machine_from_json(j);
        return {m, m};
    } catch (const json::exception& e) {
        throw IOError(std::string("malformed block-machine file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw IOError(std::string("malformed block-machine file: ") + e.what());
    }
}

bool json_is_finite_pair(const std::string& text) {
    json j = parse(text);
    return j.is_object() && j.contains("hats");
}

std::string simulation_report_to_json(const SimulationReport& rep) {
    json j{{"trials", rep.trials},
           {"wins", rep.wins},
           {"unresolved", rep.unresolved},
           {"estimate", rep.estimate},
           {"stderr", rep.stderr_estimate},
           {"event_counts",
            {{"WW", rep.ww}, {"WB", rep.wb}, {"BW", rep.bw}, {"BB", rep.bb},
             {"unresolved", rep.unresolved}}},
           {"seed", rep.seed},
           {"max_blocks", rep.max_blocks}};
    return j.dump(2) + "\n";
}

std::string search_report_to_json(const SearchReport& rep) {
    json witnesses = json::array();
    for (const auto& w : rep.witnesses) witnesses.push_back(json::parse(pair_to_json(w)));
    json counts = json::array();
    for (auto c : rep.best_win_counts.counts) counts.push_back(c);
    json j{{"best_value", rational_to_string(rep.best_value)},
           {"best_value_decimal", rep.best_value.get_d()},
           {"best_win_counts", counts},
           {"optimum_count", rep.optimum_count},
           {"class_count", rep.class_count},
           {"witnesses", witnesses},
           {"iterations", rep.iterations},
           {"wall_time", rep.wall_time}};
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IOError("cannot write file: " + path);
    out << content;
    if (!out) throw IOError("cannot write file: " + path);
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    write_file(tmp, content);
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IOError("cannot replace file: " + path);
}

void save_search_checkpoint(const std::string& path, const SearchCheckpoint& cp) {
    json j{{"config_hash", cp.config_hash},
           {"cursor", cp.cursor},
           {"best_objective", u128_to_string(cp.best_objective)},
           {"best_value", cp.any ? rational_to_string(cp.best_value) : ""},
           {"optimum_count", cp.optimum_count},
           {"rng_state", cp.rng_state}};
    j["best_pair"] = cp.best_pair ? json::parse(pair_to_json(*cp.best_pair)) : json(nullptr);
    json wit = json::array();
    for (auto w : cp.witness_indices) wit.push_back(w);
    j["witness_indices"] = wit;
    write_file_atomic(path, j.dump(2) + "\n");
}

std::optional<SearchCheckpoint> load_search_checkpoint(const std::string& path,
                                                       std::uint64_t expected_hash) {
    if (!std::filesystem::exists(path)) return std::nullopt;
    try {
        json j = parse(read_file(path));
        SearchCheckpoint cp;
        cp.config_hash = j.at("config_hash").get<std::uint64_t>();
        if (cp.config_hash != expected_hash)
            throw IOError("checkpoint does not match the search configuration");
        cp.cursor = j.at("cursor").get<std::uint64_t>();
        cp.best_objective = u128_from_string(j.at("best_objective").get<std::string>());
        cp.optimum_count = j.at("optimum_count").get<std::uint64_t>();
        const std::string bv = j.at("best_value").get<std::string>();
        cp.any = !bv.empty();
        if (cp.any) cp.best_value = parse_rational(bv);
        if (!j.at("best_pair").is_null())
            cp.best_pair = pair_from_json(j.at("best_pair").dump());
        for (const auto& w : j.at("witness_indices"))
            cp.witness_indices.push_back(w.get<std::uint64_t>());
        cp.rng_state = j.value("rng_state", "");
        return cp;
    } catch (const json::exception& e) {
        throw IOError(std::string("malformed checkpoint: ") + e.what());
    }
}

std::string format_significant(const BigRational& value, int digits) {
    if (value == 0) return "0";
    BigRational v = value;
    const bool neg = v < 0;
    if (neg) v = -v;
    // exponent e with 10^e <= v < 10^(e+1)
    int e = 0;
    BigRational ten(10);
    while (v >= ten) {
        v /= ten;
        ++e;
    }
    while (v < 1) {
        v *= ten;
        --e;
    }
    const int decimals = digits - 1 - e;
    BigInt scale;
    BigRational scaled = value;
    if (neg) scaled = -scaled;
    if (decimals >= 0) {
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, decimals);
        scaled *= BigRational(scale);
    } else {
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, -decimals);
        scaled /= BigRational(scale);
    }
    scaled.canonicalize();
    // round half away from zero
    BigInt n = (2 * scaled.get_num() + scaled.get_den()) / (2 * scaled.get_den());
    std::string ds = n.get_str();
    std::string out;
    if (decimals <= 0) {
        out = ds;
        for (int i = 0; i < -decimals; ++i) out.push_back('0');
    } else if (static_cast<int>(ds.size()) > decimals) {
        out = ds.substr(0, ds.size() - decimals) + "." + ds.substr(ds.size() - decimals);
    } else {
        out = "0.";
        for (int i = 0; i < decimals - static_cast<int>(ds.size()); ++i) out.push_back('0');
        out += ds;
    }
    return neg ? "-" + out : out;
}

}  // namespace hatlab
