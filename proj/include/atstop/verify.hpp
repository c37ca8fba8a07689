#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "atstop/nu_law.hpp"
#include "atstop/region.hpp"
#include "atstop/reward.hpp"
#include "atstop/solver.hpp"
#include "atstop/value.hpp"

namespace atstop {

/// One statistical check. Two-sided checks pass when
/// |estimate - target| <= 3 std_error + allowance; dominance checks are
/// one-sided: estimate - target <= 3 std_error + allowance.
struct CheckReport {
    std::string name;
    double x = 0.0;
    double estimate = 0.0;
    double target = 0.0;
    double std_error = 0.0;
    double allowance = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
};

[[nodiscard]] bool within_band(double estimate, double target, double std_error, double allowance) noexcept;

/// Round-off budget for checks whose estimator is exact in real arithmetic.
[[nodiscard]] double roundoff_allowance(double target) noexcept;

/// Short text form of a reward, e.g. "1*y^2" or "1*e^(0.1y)+1*e^(-0.05y)-2".
[[nodiscard]] std::string describe(const RewardExpr& g);

/// Per y: mean of A^nu{g}(y + nu) over draws of nu against g(y). The same
/// draws are reused for every y.
[[nodiscard]] std::vector<CheckReport> check_averaging(const NuLaw& law, const RewardExpr& g,
                                                       std::span<const double> ys, std::size_t samples,
                                                       std::uint64_t seed, unsigned threads = 0);

/// Per t: mean of A^{X_t}{g}(X_t) over grid-simulated X_t against g(0).
[[nodiscard]] std::vector<CheckReport> check_martingale(const LevyModel& model, const RewardExpr& g,
                                                        std::span<const double> times, std::size_t paths,
                                                        double step, std::uint64_t seed, unsigned threads = 0);

struct Strategy {
    std::string label;
    Region region;
};

/// Each finite boundary of S moved by +-0.25, +-0.5 and +-1.0.
[[nodiscard]] std::vector<Strategy> boundary_perturbations(const StoppingSolution& solution);

/// Thresholds [B, inf) for the given levels.
[[nodiscard]] std::vector<Strategy> threshold_strategies(std::span<const double> levels);

/// Grid-monitoring bias budget of value_mc for a region: the exact value
/// change when every boundary moves 0.5826 sigma sqrt(step) into the region.
[[nodiscard]] double grid_value_allowance(const LevyModel& model, const RewardExpr& g, const Region& region,
                                          double x, double step);

/// Per (strategy, x): value_mc of the strategy against value_mc of S.
[[nodiscard]] std::vector<CheckReport> check_dominance(const StoppingProblem& problem,
                                                       const StoppingSolution& solution,
                                                       std::span<const Strategy> strategies,
                                                       std::span<const double> xs, const McOptions& options);

/// Per (x, u): empirical MGF of pathwise eta(x) against the closed-form law
/// used by the solver. Allowance M(u) (e^{|u| delta} - 1), delta the
/// grid-extremum shift.
[[nodiscard]] std::vector<CheckReport> check_eta_law(const StoppingProblem& problem, std::span<const double> xs,
                                                     std::span<const double> us, std::size_t samples, double step,
                                                     std::uint64_t seed, unsigned threads = 0);

/// Per x: value_definition_mc against value_mc on the same seed.
[[nodiscard]] std::vector<CheckReport> check_value_identity(const StoppingProblem& problem,
                                                            const StoppingSolution& solution,
                                                            std::span<const double> xs, const McOptions& options);

/// Start points {center - 10, 0, center + 10} clipped to the scan grid.
[[nodiscard]] std::vector<double> standard_start_points(const StoppingProblem& problem);

/// Laws exp:0.2, negexp:0.2, bm:0,1,1 and the point mass at 0.
[[nodiscard]] std::vector<LawPtr> standard_averaging_laws();
/// e^{0.05y}, y^2, y e^{-0.05y}, e^{0.1y} + e^{-0.05y} - 2.
[[nodiscard]] std::vector<RewardExpr> standard_averaging_rewards();
[[nodiscard]] std::vector<double> standard_averaging_points();

/// Names accepted by run_suite: averaging, martingale, dominance, etalaw,
/// identity and all.
[[nodiscard]] const std::vector<std::string>& known_suites();

/// Runs a named suite on the problem: averaging over the standard matrix,
/// martingale at t = 0.5, 1, 2, dominance against boundary perturbations,
/// the eta law at u = +-beta/4 and +-beta/2, and the definition/entry value
/// identity, all at standard_start_points. `all` skips the suites the eta
/// mode cannot support. Throws std::invalid_argument for an unknown name.
[[nodiscard]] std::vector<CheckReport> run_suite(const std::string& suite, const StoppingProblem& problem,
                                                 const McOptions& options);

}  // namespace atstop
