#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "atstop/monte_carlo.hpp"
#include "atstop/region.hpp"
#include "atstop/solver.hpp"

namespace atstop {

/// V(x) = integral of [image(x + y)]^+ against the extremum density, in closed
/// form. Requires a monotone eta mode (std::invalid_argument otherwise).
[[nodiscard]] double value_one_sided(const StoppingProblem& problem, const StoppingSolution& solution, double x);
[[nodiscard]] double value_one_sided(const StoppingProblem& problem, double x);

/// E e^{-q tau} g(x + X_tau), tau the first entry time into `region` in
/// continuous time, from the two-sided exit law of Brownian motion with drift.
/// Zero for an empty region.
[[nodiscard]] double region_value_exact(const LevyModel& model, const RewardExpr& g, const Region& region, double x);

struct McOptions {
    std::size_t paths = 100000;
    double step = 0.01;
    std::uint64_t seed = 1;
    double horizon_cap = 0.0;  ///< 0 selects ln(1e8)/q, where e^{-qT} = 1e-8
    unsigned threads = 0;
};

/// Horizon T with e^{-qT} = 1e-8.
[[nodiscard]] double default_horizon(const LevyModel& model);

struct ValueEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::size_t capped = 0;     ///< paths that reached the horizon outside the region
    double tail_bound = 0.0;    ///< bound on the value those paths would still have collected
    double horizon = 0.0;
};

/// Discounted reward at the first grid entry into `region`, explicit
/// discounting, horizon capped. Far from the region the walk advances in
/// exact blocks of up to 1024 grid steps while the region is more than
/// 8 standard deviations (plus drift) away, so a block skips an entry with
/// probability below 1e-14.
[[nodiscard]] ValueEstimate value_mc(const LevyModel& model, const RewardExpr& g, const Region& region, double x,
                                     const McOptions& options);
[[nodiscard]] ValueEstimate value_mc(const StoppingProblem& problem, const StoppingSolution& solution, double x,
                                     const McOptions& options);

/// Per path: eta(x) as the argmax of g(x + X) up to the killing time, and
/// X at the first entry into S (walked past killing as needed); averages
/// [A^{eta(x + X_entry)}{g}(x + eta(x))]^+. Rejects the empirical mode.
[[nodiscard]] ValueEstimate value_definition_mc(const StoppingProblem& problem, const StoppingSolution& solution,
                                                double x, const McOptions& options);

}  // namespace atstop
