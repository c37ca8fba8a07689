#include "atstop/atransform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>

#include "atstop/errors.hpp"

namespace atstop {

double binomial(int n, int k) noexcept {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    return out;
}

std::vector<double> reciprocal_mgf_derivs(const NuLaw& law, double a, int k) {
    const auto coeffs = law.mgf_series(a, k);
    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::abs(c));
    if (!std::isfinite(coeffs[0]) || std::abs(coeffs[0]) <= 1e-13 * scale)
        throw SingularLawError(fmt::format("MGF of {} vanishes or is undefined at u = {}", law.tag(), a));
    return series::to_derivatives(series::reciprocal(coeffs));
}

std::vector<double> appell_poly(const NuLaw& law, int n) {
    if (n < 0) throw std::invalid_argument("Appell polynomial order must be non-negative");
    const auto b = reciprocal_mgf_derivs(law, 0.0, n);
    std::vector<double> coeffs(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) coeffs[static_cast<std::size_t>(k)] = binomial(n, k) * b[static_cast<std::size_t>(n - k)];
    return coeffs;
}

TransformImage transform(const RewardExpr& expr, const NuLaw& law) {
    if (expr.positive_part())
        throw std::invalid_argument("transform: positive-part reward; transform its analytic part");

    std::map<double, int> order_at_rate;
    for (const auto& t : expr.terms()) {
        auto [it, inserted] = order_at_rate.try_emplace(t.r, t.n);
        if (!inserted) it->second = std::max(it->second, t.n);
    }

    TransformImage img;
    img.law_tag = law.tag();
    for (const auto& [rate, order] : order_at_rate) {
        const auto recip = reciprocal_mgf_derivs(law, rate, order);
        ImageTerm term{rate, std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0)};
        for (const auto& t : expr.terms()) {
            if (t.r != rate) continue;
            for (int j = 0; j <= t.n; ++j)
                term.poly[static_cast<std::size_t>(j)] +=
                    t.c * binomial(t.n, j) * recip[static_cast<std::size_t>(t.n - j)];
        }
        img.terms.push_back(std::move(term));
    }
    return img;
}

double eval_image(const TransformImage& img, double y) {
    double acc = 0.0;
    for (const auto& term : img.terms) {
        double p = 0.0;
        for (auto it = term.poly.rbegin(); it != term.poly.rend(); ++it) p = p * y + *it;
        acc += std::exp(term.rate * y) * p;
    }
    return acc;
}

TransformImage differentiate(const TransformImage& img) {
    TransformImage out;
    out.law_tag = img.law_tag;
    for (const auto& term : img.terms) {
        ImageTerm d{term.rate, std::vector<double>(term.poly.size(), 0.0)};
        for (std::size_t j = 0; j < term.poly.size(); ++j) {
            d.poly[j] += term.rate * term.poly[j];
            if (j > 0) d.poly[j - 1] += static_cast<double>(j) * term.poly[j];
        }
        out.terms.push_back(std::move(d));
    }
    return out;
}

TransformImage combine(const TransformImage& f, double c1, const TransformImage& g, double c2) {
    std::map<double, std::vector<double>> merged;
    auto add = [&merged](const TransformImage& img, double c) {
        for (const auto& term : img.terms) {
            auto& poly = merged[term.rate];
            if (poly.size() < term.poly.size()) poly.resize(term.poly.size(), 0.0);
            for (std::size_t j = 0; j < term.poly.size(); ++j) poly[j] += c * term.poly[j];
        }
    };
    add(f, c1);
    add(g, c2);
    TransformImage out;
    out.law_tag = f.law_tag == g.law_tag ? f.law_tag : f.law_tag + "+" + g.law_tag;
    for (auto& [rate, poly] : merged) out.terms.push_back({rate, std::move(poly)});
    return out;
}

double transform_power(const NuLaw& law, double nu_exp, double y, double tol) {
    if (!(nu_exp < 0.0)) throw std::invalid_argument("transform_power: exponent must be negative");
    if (!(y > 0.0)) throw DomainError("transform_power: y must be positive (integral diverges otherwise)");
    if (!(tol > 0.0)) throw std::invalid_argument("transform_power: tolerance must be positive");
    if (law.domain().lo != -std::numeric_limits<double>::infinity())
        throw DomainError(fmt::format("transform_power: M(-u) of {} is not finite for all u > 0", law.tag()));

    const double alpha = -nu_exp;
    const double log_gamma = std::lgamma(alpha);
    auto integrand = [&](double u) -> double {
        if (u <= 0.0) return 0.0;
        const double log_kernel = (alpha - 1.0) * std::log(u) - log_gamma - u * y;
        return std::exp(log_kernel) / law.mgf(-u);
    };

    const double split = 1.0 / y;
    boost::math::quadrature::tanh_sinh<double> head_rule;
    double head_error = 0.0;
    const double head = head_rule.integrate(integrand, 0.0, split, tol, &head_error);

    double tail_error = 0.0;
    const double tail = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, split, std::numeric_limits<double>::infinity(), 30, tol, &tail_error);
    return head + tail;
}

}  // namespace atstop
