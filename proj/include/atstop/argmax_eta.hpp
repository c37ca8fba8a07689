#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "atstop/levy_model.hpp"
#include "atstop/nu_law.hpp"
#include "atstop/reward.hpp"

namespace atstop {

/// X at the earliest grid time maximizing g(x + X).
struct ArgmaxResult {
    double value = 0.0;  ///< X_sigma
    double time = 0.0;   ///< sigma
    std::size_t index = 0;
};

/// Streaming version of the argmax: feed (time, X) in increasing time order.
/// Only a strictly larger g(x + X) replaces the incumbent, so ties resolve to
/// the earliest time.
class ArgmaxTracker {
public:
    ArgmaxTracker(const RewardExpr& g, double x) : g_(&g), x_(x) {}

    void observe(double time, double value, std::size_t index = 0) {
        const double score = eval(*g_, x_ + value);
        if (!started_ || score > best_score_) {
            started_ = true;
            best_score_ = score;
            best_ = {value, time, index};
        }
    }

    [[nodiscard]] const ArgmaxResult& result() const noexcept { return best_; }
    [[nodiscard]] double best_score() const noexcept { return best_score_; }

private:
    const RewardExpr* g_;
    double x_;
    bool started_ = false;
    double best_score_ = 0.0;
    ArgmaxResult best_{};
};

/// Argmax of g(x + X) over the grid points with time <= path.killed_at.
[[nodiscard]] ArgmaxResult argmaxproc_of_path(const GridPath& path, const RewardExpr& g, double x);

/// One draw of eta(x) = argmaxproc_{s <= e_q} g(x + X_s) - x on a grid of
/// width `step`. The walk runs until the killing time; nothing is stored.
[[nodiscard]] double sample_eta(const LevyModel& model, const RewardExpr& g, double x, double step,
                                std::uint64_t seed);

/// `count` independent draws of eta(x); draw i uses stream index i of `seed`.
[[nodiscard]] std::vector<double> sample_eta_batch(const LevyModel& model, const RewardExpr& g, double x,
                                                   double step, std::size_t count, std::uint64_t seed,
                                                   unsigned threads = 0);

/// ln(b/a)/(a+b): below it the two-sided reward routes eta between sup and inf.
[[nodiscard]] double two_sided_switch_point(double a, double b);

/// c(x): the unique u >= 0 with sinh(b u)/sinh(a u) = e^{(a+b) x}. Returns 0 for
/// x at or above the switch point. Requires a > b > 0.
[[nodiscard]] double two_sided_threshold(double a, double b, double x);

/// E e^{u eta(x)} of the two-sided reward e^{a y} + e^{-b y} + const under
/// standard Brownian motion killed at rate q. Requires sqrt(2q) > a > b > 0
/// and |u| < sqrt(2q); otherwise DomainError / std::invalid_argument.
[[nodiscard]] double eta_mgf_two_sided(double a, double b, double q, double x, double u);

/// Closed-form law of eta(x) for the two-sided reward, with symmetric extrema
/// rate `beta` (sqrt(2q)/sigma for driftless motion).
///
/// For x at or above the switch point, eta ~ Exp(beta). Below it, eta = M when
/// M >= c(x) and -M otherwise, with M ~ Exp(beta). Its MGF is
///   beta/(beta-u) e^{-c(beta-u)} - beta/(beta+u) e^{-c(beta+u)} + beta/(beta+u).
class TwoSidedEtaLaw final : public NuLaw {
public:
    TwoSidedEtaLaw(double a, double b, double beta, double x);

    [[nodiscard]] std::string tag() const override;
    [[nodiscard]] MgfDomain domain() const override { return {-beta_, beta_}; }
    double draw(Xoshiro256pp& rng) const override;

    [[nodiscard]] double threshold() const noexcept { return c_; }
    [[nodiscard]] bool sup_branch() const noexcept { return sup_branch_; }

protected:
    [[nodiscard]] series::Series series_unchecked(double a, int k) const override;
    [[nodiscard]] double mgf_unchecked(double u) const override;

private:
    double a_;
    double b_;
    double beta_;
    double x_;
    bool sup_branch_;
    double c_;
};

/// Law given by a sample: MGF, moments and Taylor data are sample averages,
/// draws are bootstrap resamples.
class EmpiricalLaw final : public NuLaw {
public:
    explicit EmpiricalLaw(std::vector<double> samples);

    [[nodiscard]] std::string tag() const override;
    [[nodiscard]] MgfDomain domain() const override { return {}; }
    double draw(Xoshiro256pp& rng) const override;

    [[nodiscard]] std::span<const double> samples() const noexcept { return samples_; }

    /// Jackknife standard error of the sample MGF at u (leave-one-out; for a
    /// mean this equals sd / sqrt(n)).
    [[nodiscard]] double mgf_stderr(double u) const;

    /// Delete-a-group jackknife standard error of an arbitrary statistic of
    /// the law (e.g. a transform image evaluated at a point).
    [[nodiscard]] double jackknife_stderr(const std::function<double(const NuLaw&)>& statistic,
                                          int groups = 20) const;

protected:
    [[nodiscard]] series::Series series_unchecked(double a, int k) const override;
    [[nodiscard]] double mgf_unchecked(double u) const override;

private:
    explicit EmpiricalLaw(std::vector<double> samples, bool skip_size_check);

    std::vector<double> samples_;
};

/// Minimum sample count accepted by empirical_law.
inline constexpr std::size_t kMinEmpiricalSamples = 1000;

/// Throws std::invalid_argument for fewer than kMinEmpiricalSamples samples.
[[nodiscard]] std::shared_ptr<const EmpiricalLaw> empirical_law(std::vector<double> samples);

}  // namespace atstop
