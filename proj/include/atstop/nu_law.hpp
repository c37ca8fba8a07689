#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "atstop/levy_model.hpp"
#include "atstop/rng.hpp"
#include "atstop/series.hpp"

namespace atstop {

/// Open interval (lo, hi) on which E e^{u nu} is finite. Always contains 0.
struct MgfDomain {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    [[nodiscard]] bool contains(double u) const noexcept { return u > lo && u < hi; }
};

/// Law of a real random variable nu with a two-sided exponential moment near
/// zero, described through its moment generating function M(u) = E e^{u nu}.
///
/// Every evaluation is checked against domain(); outside it a DomainError is
/// thrown rather than extrapolating.
class NuLaw {
public:
    virtual ~NuLaw() = default;

    /// Short identifier, e.g. "exp:0.2".
    [[nodiscard]] virtual std::string tag() const = 0;
    [[nodiscard]] virtual MgfDomain domain() const = 0;

    [[nodiscard]] double mgf(double u) const;

    /// M(a), M'(a), ..., M^(k)(a).
    [[nodiscard]] std::vector<double> taylor(double a, int k) const;

    /// Normalized Taylor coefficients M^(j)(a)/j!, j = 0..k.
    [[nodiscard]] series::Series mgf_series(double a, int k) const;

    /// E nu^k
    [[nodiscard]] double moment(int k) const;

    /// One draw of nu; deterministic in `seed`.
    [[nodiscard]] double sample(std::uint64_t seed) const;

    virtual double draw(Xoshiro256pp& rng) const = 0;

    /// Highest derivative order available at any point (default: unbounded).
    [[nodiscard]] virtual int max_order() const { return std::numeric_limits<int>::max(); }

protected:
    /// Normalized coefficients at a point already known to lie in domain().
    [[nodiscard]] virtual series::Series series_unchecked(double a, int k) const = 0;
    [[nodiscard]] virtual double mgf_unchecked(double u) const { return series_unchecked(u, 0)[0]; }

    void check_domain(double u) const;
};

using LawPtr = std::shared_ptr<const NuLaw>;

/// nu == value almost surely.
class DegenerateLaw final : public NuLaw {
public:
    explicit DegenerateLaw(double value = 0.0) : value_(value) {}
    [[nodiscard]] std::string tag() const override;
    [[nodiscard]] MgfDomain domain() const override { return {}; }
    double draw(Xoshiro256pp&) const override { return value_; }

protected:
    [[nodiscard]] series::Series series_unchecked(double a, int k) const override;

private:
    double value_;
};

/// nu ~ Exp(beta) on [0, inf): the law of the killed supremum. M(u) = beta/(beta-u).
class ExponentialLaw final : public NuLaw {
public:
    explicit ExponentialLaw(double beta);
    [[nodiscard]] std::string tag() const override;
    [[nodiscard]] MgfDomain domain() const override;
    double draw(Xoshiro256pp& rng) const override;
    [[nodiscard]] double rate() const noexcept { return beta_; }

protected:
    [[nodiscard]] series::Series series_unchecked(double a, int k) const override;
    [[nodiscard]] double mgf_unchecked(double u) const override { return beta_ / (beta_ - u); }

private:
    double beta_;
};

/// nu = -E with E ~ Exp(beta): the law of the killed infimum. M(u) = beta/(beta+u).
class NegExponentialLaw final : public NuLaw {
public:
    explicit NegExponentialLaw(double beta);
    [[nodiscard]] std::string tag() const override;
    [[nodiscard]] MgfDomain domain() const override;
    double draw(Xoshiro256pp& rng) const override;
    [[nodiscard]] double rate() const noexcept { return beta_; }

protected:
    [[nodiscard]] series::Series series_unchecked(double a, int k) const override;
    [[nodiscard]] double mgf_unchecked(double u) const override { return beta_ / (beta_ + u); }

private:
    double beta_;
};

/// nu ~ N(mean, variance); variance 0 is allowed. The law of X_t is
/// N(mu t, sigma^2 t), with M(u) = e^{t psi(u)}.
class GaussianLaw final : public NuLaw {
public:
    GaussianLaw(double mean, double variance);
    [[nodiscard]] std::string tag() const override;
    [[nodiscard]] MgfDomain domain() const override { return {}; }
    double draw(Xoshiro256pp& rng) const override;

protected:
    [[nodiscard]] series::Series series_unchecked(double a, int k) const override;

private:
    double mean_;
    double variance_;
};

/// Law of X_t for the model.
[[nodiscard]] LawPtr law_at_time(const LevyModel& model, double t);

/// Law of sup (Exp(beta_plus)) or inf (-Exp(beta_minus)) of X over [0, e_q].
[[nodiscard]] LawPtr extremum_law(const LevyModel& model, Side side);

/// Parses `exp:<beta>`, `negexp:<beta>` or `bm:<mu>,<sigma>,<t>`.
/// Throws std::invalid_argument on malformed input.
[[nodiscard]] LawPtr parse_law_spec(std::string_view spec);

}  // namespace atstop
