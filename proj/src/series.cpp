#include "atstop/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace atstop::series {

Series from_derivatives(std::span<const double> derivs) {
    Series out(derivs.size());
    double factorial = 1.0;
    for (std::size_t j = 0; j < derivs.size(); ++j) {
        if (j > 0) factorial *= static_cast<double>(j);
        out[j] = derivs[j] / factorial;
    }
    return out;
}

std::vector<double> to_derivatives(std::span<const double> coeffs) {
    std::vector<double> out(coeffs.size());
    double factorial = 1.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (j > 0) factorial *= static_cast<double>(j);
        out[j] = coeffs[j] * factorial;
    }
    return out;
}

Series multiply(std::span<const double> lhs, std::span<const double> rhs) {
    const std::size_t n = std::min(lhs.size(), rhs.size());
    Series out(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= j; ++i) acc += lhs[i] * rhs[j - i];
        out[j] = acc;
    }
    return out;
}

Series reciprocal(std::span<const double> coeffs) {
    if (coeffs.empty()) return {};
    if (coeffs[0] == 0.0) throw std::domain_error("series reciprocal: leading coefficient is zero");
    Series out(coeffs.size(), 0.0);
    out[0] = 1.0 / coeffs[0];
    for (std::size_t j = 1; j < coeffs.size(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= j; ++i) acc += coeffs[i] * out[j - i];
        out[j] = -acc / coeffs[0];
    }
    return out;
}

Series exp(std::span<const double> coeffs) {
    if (coeffs.empty()) return {};
    Series out(coeffs.size(), 0.0);
    out[0] = std::exp(coeffs[0]);
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * coeffs[j] * out[k - j];
        out[k] = acc / static_cast<double>(k);
    }
    return out;
}

Series pole(double p, double a, int k) {
    if (a == p) throw std::domain_error("series pole: expansion point at the pole");
    Series out(static_cast<std::size_t>(k) + 1);
    const double inv = 1.0 / (p - a);
    double power = inv;
    for (auto& c : out) {
        c = power;
        power *= inv;
    }
    return out;
}

Series exponential(double s, double a, int k) {
    Series out(static_cast<std::size_t>(k) + 1);
    double term = std::exp(s * a);
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (j > 0) term *= s / static_cast<double>(j);
        out[j] = term;
    }
    return out;
}

}  // namespace atstop::series
