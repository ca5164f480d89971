#ifndef TORUSWALK_DECISION_HPP
#define TORUSWALK_DECISION_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "toruswalk/analysis.hpp"
#include "toruswalk/operators.hpp"

namespace toruswalk {

/// Deterministic uniform draws in [0,1) from mt19937_64 (53-bit mantissa).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

    /// Substream seed for round `index`, derived via splitmix64.
    static std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

private:
    std::mt19937_64 engine_;
};

/// Inverse-CDF draw over the fixed node-rank order. Probabilities must sum to
/// 1 within 1e-9.
int sample_measurement(const std::vector<double>& probs, RngStream& rng);

struct RoundConfig {
    int players = 2;          // 2 or 3
    int options = 11;         // N
    std::string scheme;       // "reflection", "fermionic_pair", ...
    CoinField field;
    WalkState initial;
    int t_meas = 200;
    int rounds = 1;
    std::uint64_t seed = 0;
};

struct RoundStats {
    int rounds = 0;
    int conflict_count = 0;
    std::vector<std::vector<int>> option_counts;  // [player][option], 0-based
    std::map<int, int> joint_counts;              // node rank -> count
};

/// Per round: evolve the fresh initial state t_meas steps, measure, map the
/// observed node to one option per player (coordinate i, 1-based).
RoundStats run_rounds(const RoundConfig& cfg);

std::string round_stats_json(const RoundConfig& cfg, const RoundStats& st);
std::string round_stats_csv(const RoundConfig& cfg, const RoundStats& st);

}  // namespace toruswalk

#endif
