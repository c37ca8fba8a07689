#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "atstop/atransform.hpp"
#include "atstop/levy_model.hpp"
#include "atstop/nu_law.hpp"
#include "atstop/region.hpp"
#include "atstop/reward.hpp"

namespace atstop {

enum class EtaKind {
    monotone_sup,  ///< eta = sup of X over [0, e_q] (non-decreasing rewards)
    monotone_inf,  ///< eta = inf of X over [0, e_q] (non-increasing rewards)
    two_sided,     ///< closed-form routed law for e^{a y} + e^{-b y} + const
    empirical,     ///< eta(x) sampled pathwise at every evaluation point
};

[[nodiscard]] std::string to_string(EtaKind kind);
/// Accepts the names printed by to_string; throws std::invalid_argument otherwise.
[[nodiscard]] EtaKind parse_eta_kind(const std::string& name);

struct EtaMode {
    EtaKind kind = EtaKind::monotone_sup;
    double a = 0.0;  ///< two_sided: rate of the increasing exponential
    double b = 0.0;  ///< two_sided: rate of the decreasing exponential (positive)
    std::size_t empirical_samples = 2000;
    double empirical_step = 0.01;
    std::uint64_t empirical_seed = 1;
};

struct ScanGrid {
    double lo = -250.0;
    double hi = 250.0;
    double step = 0.5;
};

struct StoppingProblem {
    LevyModel model;
    RewardExpr reward;
    EtaMode eta;
    ScanGrid grid;
    double tol = 1e-10;  ///< absolute bisection tolerance on x

    /// Throws std::invalid_argument for inconsistent settings.
    void validate() const;
};

/// Reads (a, b) off a reward of the form k (e^{a y} + e^{-b y}) + const, k > 0.
/// Throws std::invalid_argument for any other shape.
[[nodiscard]] EtaMode two_sided_mode_for(const RewardExpr& reward);

/// Scan grid centred on the switch point of the two-sided reward (0 otherwise)
/// with half-width 50/beta and step 0.25/max(beta, max |rate|), capped at 0.5.
[[nodiscard]] ScanGrid default_grid(const LevyModel& model, const RewardExpr& reward, const EtaMode& eta);

/// Problem with the default grid and tolerance.
[[nodiscard]] StoppingProblem make_problem(const LevyModel& model, const RewardExpr& reward, const EtaMode& eta);

/// Centre of the scan grid: the two-sided switch point, or 0.
[[nodiscard]] double problem_center(const StoppingProblem& problem);

/// Law of eta(x) used by the transform at start point x.
[[nodiscard]] LawPtr eta_law_at(const StoppingProblem& problem, double x);

/// Transform of the reward's analytic part under `law`.
[[nodiscard]] TransformImage image_under(const StoppingProblem& problem, const NuLaw& law);

/// A^{eta(x)}{g}(x). For positive-part rewards the value for x <= 0 is the
/// analytic image as well; stopping_region excludes that half-line itself.
[[nodiscard]] double image_at(const StoppingProblem& problem, double x);

/// image_at with a jackknife standard error (zero for closed-form laws).
struct ImageEstimate {
    double value = 0.0;
    double std_error = 0.0;
};
[[nodiscard]] ImageEstimate image_estimate_at(const StoppingProblem& problem, double x);

/// [A^{law}{g}(y)]^+ restricted to y > 0 for positive-part rewards.
[[nodiscard]] double positive_image(const StoppingProblem& problem, const TransformImage& img, double y);

struct Boundary {
    double x = 0.0;
    double residual = 0.0;  ///< |image_at(x)|
    bool uncertain = false;
};

struct ComonotoneCell {
    double lo = 0.0;
    double hi = 0.0;
    double reward_slope = 0.0;
    double image_slope = 0.0;
};

struct ComonotoneInterval {
    Interval interval;
    std::size_t cells_checked = 0;
    std::vector<ComonotoneCell> violations;
    [[nodiscard]] bool pass() const noexcept { return violations.empty(); }
};

struct ComonotoneReport {
    std::vector<ComonotoneInterval> intervals;
    [[nodiscard]] bool pass() const noexcept;
};

struct StoppingSolution {
    Region region;
    std::vector<Boundary> boundaries;
    ComonotoneReport comonotone;
    bool inconclusive = false;   ///< some sign decision was within 3 standard errors of zero
    std::size_t root_bound = 0;  ///< max possible sign changes when the law is x-independent, 0 if unknown
    std::function<double(double)> image_at;
};

/// Scans the grid for sign changes of image_at, refines each by bisection,
/// and assembles S = closure{x : image_at(x) >= 0}. For positive-part rewards
/// S is restricted to x > 0, where the reward equals its analytic part. Sign at
/// the grid ends is extended to +-infinity. Throws std::domain_error if the
/// reward is negative somewhere on S.
[[nodiscard]] StoppingSolution stopping_region(const StoppingProblem& problem);

/// On each grid cell inside S, compares the sign of the finite-difference slope
/// of g with that of y -> A^{eta(m)}{g}(y), m the cell midpoint.
[[nodiscard]] ComonotoneReport check_comonotone(const StoppingProblem& problem, const StoppingSolution& solution);

}  // namespace atstop
