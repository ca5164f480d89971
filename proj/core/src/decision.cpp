#include "toruswalk/decision.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace toruswalk {

std::uint64_t RngStream::substream_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over seed + round offset
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

int sample_measurement(const std::vector<double>& probs, RngStream& rng) {
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw std::invalid_argument("sample_measurement: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("sample_measurement: probabilities must sum to 1 within 1e-9");
    const double u = rng.uniform() * total;
    double cum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        cum += probs[i];
        if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
}

RoundStats run_rounds(const RoundConfig& cfg) {
    if (cfg.players < 2 || cfg.players > 3)
        throw std::invalid_argument("run_rounds: players must be 2 or 3");
    if (cfg.players != cfg.field.geom.dim)
        throw std::invalid_argument("run_rounds: scheme dimensionality does not match player count");
    if (cfg.options != cfg.field.geom.size)
        throw std::invalid_argument("run_rounds: options must equal the cycle length");
    if (cfg.t_meas < 1) throw std::invalid_argument("run_rounds: t_meas must be >= 1");
    if (cfg.rounds < 1) throw std::invalid_argument("run_rounds: rounds must be >= 1");
    if (!(cfg.initial.geom == cfg.field.geom))
        throw std::invalid_argument("run_rounds: initial state geometry mismatch");

    // Each round starts from the same fresh initial state, so the measured
    // distribution is computed once and sampled R times.
    WalkState cur = cfg.initial;
    for (int t = 0; t < cfg.t_meas; ++t) cur = step(cur, cfg.field);
    std::vector<double> probs = position_distribution(cur);
    double total = 0.0;
    for (double p : probs) total += p;
    if (std::abs(total - 1.0) > 1e-9)
        throw numeric_error("run_rounds: measured distribution lost normalization");
    for (double& p : probs) p /= total;

    const Geometry& g = cfg.field.geom;
    RoundStats st;
    st.rounds = cfg.rounds;
    st.option_counts.assign(cfg.players, std::vector<int>(cfg.options, 0));
    for (int round = 0; round < cfg.rounds; ++round) {
        RngStream rng(RngStream::substream_seed(cfg.seed, round));
        const int rank = sample_measurement(probs, rng);
        const Node v = node_from_rank(g, rank);
        if (is_conflict_node(g, v)) ++st.conflict_count;
        for (int p = 0; p < cfg.players; ++p) ++st.option_counts[p][v.x[p]];
        ++st.joint_counts[rank];
    }
    return st;
}

std::string round_stats_json(const RoundConfig& cfg, const RoundStats& st) {
    nlohmann::json j;
    j["players"] = cfg.players;
    j["options"] = cfg.options;
    j["scheme"] = cfg.scheme;
    j["t_meas"] = cfg.t_meas;
    j["rounds"] = st.rounds;
    j["seed"] = cfg.seed;
    j["conflict_count"] = st.conflict_count;
    j["conflict_rate"] = static_cast<double>(st.conflict_count) / st.rounds;
    j["option_counts"] = st.option_counts;
    j["joint_counts"] = nlohmann::json::array();
    for (const auto& [rank, count] : st.joint_counts) {
        const auto ext = external_labels(cfg.field.geom, node_from_rank(cfg.field.geom, rank));
        nlohmann::json e;
        e["node"] = std::vector<int>(ext.begin(), ext.begin() + cfg.field.geom.dim);
        e["count"] = count;
        j["joint_counts"].push_back(e);
    }
    return j.dump(2);
}

std::string round_stats_csv(const RoundConfig& cfg, const RoundStats& st) {
    std::ostringstream os;
    os << "player,option,count\n";
    for (int p = 0; p < cfg.players; ++p)
        for (int o = 0; o < cfg.options; ++o)
            os << (p + 1) << ',' << (o + 1) << ',' << st.option_counts[p][o] << '\n';
    return os.str();
}

}  // namespace toruswalk
