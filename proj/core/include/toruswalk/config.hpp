#ifndef TORUSWALK_CONFIG_HPP
#define TORUSWALK_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toruswalk/coins.hpp"
#include "toruswalk/operators.hpp"
#include "toruswalk/state.hpp"

namespace toruswalk {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InitialSpec {
    std::string type = "basis";  // basis|fermionic|mirrored|seed_superposition|explicit
    std::vector<std::vector<int>> nodes;       // 1-based labels
    std::vector<std::vector<cplx>> inners;     // per listed node
    int x_star = 1;                            // 1-based, mirrored only
    std::vector<cplx> amplitudes;              // explicit only
};

struct OutputSpec {
    std::optional<std::string> avg_csv;
    std::optional<std::string> per_step_csv;
    std::optional<std::string> heatmap_pgm;
    std::optional<std::string> report_json;
};

/// CLI run configuration; schema-validated, unknown keys rejected.
struct RunConfig {
    int dim = 2;
    int n = 11;
    std::string scheme = "reflection";
    std::optional<std::string> coin_file;  // scheme == "custom"
    InitialSpec initial;
    int steps = 200;
    OutputSpec outputs;
    std::uint64_t seed = 0;
    std::optional<int> rounds;
};

RunConfig parse_run_config(const std::string& json_text);

/// Coin field + initial state realized from a validated config.
struct PreparedRun {
    CoinField field;
    WalkState initial;
};

PreparedRun prepare_run(const RunConfig& cfg);

}  // namespace toruswalk

#endif
