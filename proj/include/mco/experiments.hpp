#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mco/lvm_oracle.hpp"
#include "mco/result_table.hpp"
#include "mco/scalar_models.hpp"

namespace mco {

// Bad experiment name or parameter. The CLI maps this to exit code 1.
class ConfigError : public Error { using Error::Error; };

inline constexpr const char* kLibraryVersion = "mco-lab 0.1.0";

struct ExperimentConfig {
    std::string name;
    std::uint64_t seed = 0;
    std::optional<std::size_t> reps;
    std::optional<std::size_t> samples;
    // Experiment-specific parameters; numbers, arrays, or strings such as "1,2,4".
    nlohmann::json params = nlohmann::json::object();
    std::string out;
    bool plot = false;

    nlohmann::json to_json() const;
};

const std::vector<std::string>& experiment_names();

// Deterministic for a given config, apart from the wall_time_s metadata entry.
ResultTable run(const ExperimentConfig& config);

// Writes the CSV to path and, when plot is set, an SVG next to it
// (same stem, .svg extension). Throws IoError on failure.
void emit(const ResultTable& table, const std::string& path, bool plot);

// "lognormal:0,1", "gamma:2,2", "inverse_gamma:1.5,1", "log_stable:0.5,1",
// "finite:1,3@0.5,0.5" (atoms@probs; probs default to uniform).
ScalarModel parse_model(const std::string& text);

// Random equal-mean pair from one family ("gamma", "inverse_gamma" with
// shapes > 2, or "lognormal"), as used by the variance-heuristic experiment.
std::pair<ScalarModel, ScalarModel> random_equal_mean_pair(const std::string& family, Engine& eng);

// The d_z = 2, d_x = 3 instance used by the khat experiment.
LinearGaussianLVM default_linear_gaussian_instance();

// The |Z| = 3, |X| = 2 instance used by the fdiv-monotonicity experiment.
DiscreteLVM default_discrete_instance();

} // namespace mco
