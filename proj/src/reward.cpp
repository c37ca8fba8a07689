#include "atstop/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace atstop {

namespace {

std::vector<RewardTerm> normalize(std::vector<RewardTerm> terms) {
    for (const auto& t : terms) {
        if (t.n < 0) throw std::invalid_argument("reward term power must be non-negative");
        if (!std::isfinite(t.c) || !std::isfinite(t.r))
            throw std::invalid_argument("reward term coefficients must be finite");
    }
    std::sort(terms.begin(), terms.end(), [](const RewardTerm& a, const RewardTerm& b) {
        return a.r != b.r ? a.r < b.r : a.n < b.n;
    });
    std::vector<RewardTerm> out;
    for (const auto& t : terms) {
        if (!out.empty() && out.back().r == t.r && out.back().n == t.n)
            out.back().c += t.c;
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const RewardTerm& t) { return t.c == 0.0; });
    return out;
}

}  // namespace

RewardExpr::RewardExpr(std::vector<RewardTerm> terms, bool positive_part)
    : terms_(normalize(std::move(terms))), positive_part_(positive_part) {}

RewardExpr RewardExpr::positive_power(int n) {
    return RewardExpr({{1.0, n, 0.0}}, true);
}

RewardExpr RewardExpr::scaled(double factor) const {
    auto terms = terms_;
    for (auto& t : terms) t.c *= factor;
    return RewardExpr(std::move(terms), positive_part_);
}

int RewardExpr::max_power() const noexcept {
    int n = 0;
    for (const auto& t : terms_) n = std::max(n, t.n);
    return n;
}

double RewardExpr::max_abs_rate() const noexcept {
    double r = 0.0;
    for (const auto& t : terms_) r = std::max(r, std::abs(t.r));
    return r;
}

RewardExpr operator+(const RewardExpr& lhs, const RewardExpr& rhs) {
    if (lhs.positive_part_ != rhs.positive_part_)
        throw std::invalid_argument("cannot add rewards with different positive-part wrappers");
    auto terms = lhs.terms_;
    terms.insert(terms.end(), rhs.terms_.begin(), rhs.terms_.end());
    return RewardExpr(std::move(terms), lhs.positive_part_);
}

double ipow(double y, int n) noexcept {
    double out = 1.0;
    for (int i = 0; i < n; ++i) out *= y;
    return out;
}

double eval(const RewardExpr& expr, double y) {
    if (expr.positive_part() && y <= 0.0) return 0.0;
    double acc = 0.0;
    for (const auto& t : expr.terms()) acc += t.c * ipow(y, t.n) * std::exp(t.r * y);
    return acc;
}

RewardExpr derivative(const RewardExpr& expr) {
    if (expr.positive_part())
        throw std::invalid_argument("derivative: positive-part reward is not differentiable at 0");
    std::vector<RewardTerm> out;
    for (const auto& t : expr.terms()) {
        if (t.n > 0) out.push_back({t.c * t.n, t.n - 1, t.r});
        if (t.r != 0.0) out.push_back({t.c * t.r, t.n, t.r});
    }
    return RewardExpr(std::move(out));
}

SpectralForm spectral(const RewardExpr& expr) {
    if (expr.positive_part())
        throw std::invalid_argument("spectral: positive-part reward has no atomic spectral form");
    SpectralForm form;
    form.atoms.reserve(expr.terms().size());
    for (const auto& t : expr.terms()) form.atoms.push_back({t.n, t.r, t.c});
    return form;
}

double pair_with_exponential(const SpectralAtom& atom, double y) {
    // (-1)^n delta^(n)(u - r) against e^{uy} gives (-1)^{2n} d^n/du^n e^{uy} at u = r.
    return atom.weight * ipow(y, atom.order) * std::exp(atom.point * y);
}

SpectralForm combine(const SpectralForm& f, double c1, const SpectralForm& g, double c2) {
    std::vector<RewardTerm> terms;
    for (const auto& a : f.atoms) terms.push_back({c1 * a.weight, a.order, a.point});
    for (const auto& a : g.atoms) terms.push_back({c2 * a.weight, a.order, a.point});
    return spectral(RewardExpr(std::move(terms)));
}

}  // namespace atstop
