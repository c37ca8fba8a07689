#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "atstop/solver.hpp"
#include "atstop/value.hpp"

namespace atstop {

/// Malformed configuration. The message starts with "<source>:<line>:<column>: ".
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parsed run configuration with every default filled in.
struct Config {
    LevyModel model;
    RewardExpr reward;
    EtaMode eta;
    ScanGrid grid;
    double tol = 1e-10;
    McOptions mc;
    std::vector<std::string> defaulted;  ///< dotted names of the fields that took defaults
};

/// YAML document:
///   process: {mu, sigma}        (defaults 0, 1)
///   q: <real>                   (required)
///   reward: {terms: [{c, n, r}], positive_part}
///   eta_mode: monotone_sup | monotone_inf | two_sided | empirical
///   solver: {grid_lo, grid_hi, grid_step, tol, empirical_samples}
///   mc: {paths, step, seed, horizon_cap}
/// eta_mode defaults to two_sided when the reward has that shape and to
/// monotone_sup otherwise.
[[nodiscard]] Config parse_config(const std::string& text, const std::string& source = "<config>");
[[nodiscard]] Config load_config(const std::string& path);

/// Fig. 2 setting: e^{0.1x} + e^{-0.05x} - 2 under standard Brownian motion, q = 0.02.
[[nodiscard]] Config default_config();

[[nodiscard]] StoppingProblem to_problem(const Config& config);

/// The effective configuration, defaults included.
[[nodiscard]] nlohmann::ordered_json echo(const Config& config);

}  // namespace atstop
