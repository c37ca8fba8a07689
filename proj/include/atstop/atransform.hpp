#pragma once

#include <string>
#include <vector>

#include "atstop/nu_law.hpp"
#include "atstop/reward.hpp"

namespace atstop {

/// e^{rate y} * (poly[0] + poly[1] y + ... )
struct ImageTerm {
    double rate = 0.0;
    std::vector<double> poly;

    friend bool operator==(const ImageTerm&, const ImageTerm&) = default;
};

/// Closed-form image A^nu{g} of an exponential-polynomial reward: an
/// exponential polynomial whose coefficients depend on the law of nu.
struct TransformImage {
    std::vector<ImageTerm> terms;  ///< sorted by rate, one term per distinct rate
    std::string law_tag;
};

/// d^j/du^j (1/M)(a) for j = 0..k, by series reciprocal of the MGF Taylor data.
/// Throws DomainError outside the MGF domain and SingularLawError if M(a) == 0.
[[nodiscard]] std::vector<double> reciprocal_mgf_derivs(const NuLaw& law, double a, int k);

/// Coefficients (degree ascending) of the Appell polynomial
/// Q_n(y) = sum_k C(n,k) b_{n-k} y^k with b_j = (1/M)^(j)(0). Monic, degree n.
[[nodiscard]] std::vector<double> appell_poly(const NuLaw& law, int n);

/// Image of an exponential-polynomial reward. A term c y^n e^{ry} maps to
/// c e^{ry} sum_j C(n,j) y^j (1/M)^(n-j)(r). Positive-part rewards are
/// rejected; pass analytic_part().
[[nodiscard]] TransformImage transform(const RewardExpr& expr, const NuLaw& law);

[[nodiscard]] double eval_image(const TransformImage& img, double y);

/// Image of the derivative, i.e. d/dy of eval_image.
[[nodiscard]] TransformImage differentiate(const TransformImage& img);

/// c1 * f + c2 * g, merged by rate.
[[nodiscard]] TransformImage combine(const TransformImage& f, double c1, const TransformImage& g, double c2);

/// Image of y^nu_exp (nu_exp < 0) evaluated at y > 0:
///   integral_0^inf u^{-nu_exp-1} / Gamma(-nu_exp) * e^{-u y} / M(-u) du.
/// The law must have M(-u) finite for every u > 0 (sup-type laws).
[[nodiscard]] double transform_power(const NuLaw& law, double nu_exp, double y, double tol = 1e-9);

/// Binomial coefficient as a double.
[[nodiscard]] double binomial(int n, int k) noexcept;

}  // namespace atstop
