#pragma once

#include <vector>

namespace atstop {

/// One exponential-polynomial term c * y^n * e^{r y}.
struct RewardTerm {
    double c = 0.0;
    int n = 0;
    double r = 0.0;

    friend bool operator==(const RewardTerm&, const RewardTerm&) = default;
};

/// Reward g(y) = sum c_k y^{n_k} e^{r_k y}, optionally wrapped as
/// g(y) = 1{y > 0} * (analytic sum), which models (y^+)^n.
///
/// Terms are kept normalized: zero coefficients dropped, equal (n, r) pairs
/// merged, sorted by (r, n). Constants are (c, 0, 0) terms.
class RewardExpr {
public:
    RewardExpr() = default;
    explicit RewardExpr(std::vector<RewardTerm> terms, bool positive_part = false);

    /// (y^+)^n
    static RewardExpr positive_power(int n);

    [[nodiscard]] const std::vector<RewardTerm>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool positive_part() const noexcept { return positive_part_; }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

    /// The same terms without the positive-part wrapper.
    [[nodiscard]] RewardExpr analytic_part() const { return RewardExpr(terms_, false); }

    [[nodiscard]] RewardExpr scaled(double factor) const;
    [[nodiscard]] int max_power() const noexcept;
    [[nodiscard]] double max_abs_rate() const noexcept;

    friend RewardExpr operator+(const RewardExpr& lhs, const RewardExpr& rhs);
    friend bool operator==(const RewardExpr&, const RewardExpr&) = default;

private:
    std::vector<RewardTerm> terms_;
    bool positive_part_ = false;
};

/// weight * (-1)^order * delta^{(order)}(u - point)
struct SpectralAtom {
    int order = 0;
    double point = 0.0;
    double weight = 0.0;

    friend bool operator==(const SpectralAtom&, const SpectralAtom&) = default;
};

/// Inverse bilateral Laplace transform of an exponential polynomial: one
/// atom per term.
struct SpectralForm {
    std::vector<SpectralAtom> atoms;

    friend bool operator==(const SpectralForm&, const SpectralForm&) = default;
};

[[nodiscard]] double eval(const RewardExpr& expr, double y);

/// Term-wise derivative. Throws std::invalid_argument for positive-part rewards.
[[nodiscard]] RewardExpr derivative(const RewardExpr& expr);

/// Throws std::invalid_argument for positive-part rewards; pass
/// analytic_part() instead.
[[nodiscard]] SpectralForm spectral(const RewardExpr& expr);

/// Integral of the atom against e^{u y}: weight * y^order * e^{point y}.
[[nodiscard]] double pair_with_exponential(const SpectralAtom& atom, double y);

/// Linear combination c1*f + c2*g of spectral forms, merged and normalized the
/// same way as reward terms.
[[nodiscard]] SpectralForm combine(const SpectralForm& f, double c1, const SpectralForm& g, double c2);

/// y^n for integer n >= 0.
[[nodiscard]] double ipow(double y, int n) noexcept;

}  // namespace atstop
