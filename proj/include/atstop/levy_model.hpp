#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/random/normal_distribution.hpp>

#include "atstop/rng.hpp"

namespace atstop {

/// Brownian motion with drift, X_t = mu t + sigma W_t, discounted (killed)
/// at rate q.
struct LevyModel {
    double mu = 0.0;     ///< drift (space/time)
    double sigma = 1.0;  ///< volatility (space/sqrt(time)), > 0
    double q = 0.02;     ///< discount / killing rate (1/time), > 0

    /// Throws std::invalid_argument on sigma <= 0, q <= 0 or non-finite fields.
    void validate() const;
};

/// Decay rates of the extrema of X over [0, e_q]: sup ~ Exp(beta_plus),
/// -inf ~ Exp(beta_minus).
struct ExtremaRates {
    double beta_plus = 0.0;
    double beta_minus = 0.0;
};

/// Sampled path on a uniform grid, together with an independent killing time.
struct GridPath {
    std::vector<double> times;
    std::vector<double> values;
    double killed_at = 0.0;
};

enum class Side { sup, inf };

/// psi(u) = sigma^2 u^2 / 2 + mu u, so that E e^{u X_t} = e^{t psi(u)}.
[[nodiscard]] double laplace_exponent(const LevyModel& model, double u);

/// Roots beta_plus > 0 and -beta_minus < 0 of psi(u) = q.
[[nodiscard]] ExtremaRates extrema_rates(const LevyModel& model);

/// Exponential(q) killing time; deterministic in `seed`.
[[nodiscard]] double sample_killing(const LevyModel& model, std::uint64_t seed);

/// Grid path on [0, horizon] with exact Gaussian increments. The killing time
/// is drawn from a stream independent of the increments.
[[nodiscard]] GridPath sample_path(const LevyModel& model, double horizon, double step,
                                   std::uint64_t seed);

/// E exp(u * sup_{t<=e_q} X_t) for Side::sup, E exp(u * inf_{t<=e_q} X_t) for
/// Side::inf. Throws DomainError when u is at or beyond the decay rate.
[[nodiscard]] double mgf_extremum(const LevyModel& model, Side side, double u);

/// Grid-monitoring bias of the extrema: a path observed every `step` misses
/// the continuous extremum by about 0.5826 sigma sqrt(step) on average
/// (0.5826 = -zeta(1/2)/sqrt(2 pi)). Used for deterministic test allowances.
[[nodiscard]] double grid_extremum_shift(const LevyModel& model, double step);

/// Number of grid steps before killing: floor(e_q / step).
[[nodiscard]] std::size_t steps_before(double killed_at, double step);

/// Draws Gaussian increments of the model over a fixed grid step.
class IncrementSampler {
public:
    IncrementSampler(const LevyModel& model, double step, Xoshiro256pp rng);

    /// Increment over one grid step.
    double next() { return drift_ + scale_ * normal_(rng_); }

    /// Exact increment over `substeps` consecutive grid steps.
    double next_block(std::size_t substeps);

    [[nodiscard]] double step() const noexcept { return step_; }

private:
    double step_;
    double mu_;
    double sigma_;
    double drift_;
    double scale_;
    Xoshiro256pp rng_;
    boost::random::normal_distribution<double> normal_;
};

}  // namespace atstop
