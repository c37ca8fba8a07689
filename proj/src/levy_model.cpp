#include "atstop/levy_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/random/exponential_distribution.hpp>

#include "atstop/errors.hpp"

namespace atstop {

void LevyModel::validate() const {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(q))
        throw std::invalid_argument("model parameters must be finite");
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
    if (q <= 0.0) throw std::invalid_argument("q must be positive");
}

double laplace_exponent(const LevyModel& model, double u) {
    return 0.5 * model.sigma * model.sigma * u * u + model.mu * u;
}

ExtremaRates extrema_rates(const LevyModel& model) {
    model.validate();
    const double s2 = model.sigma * model.sigma;
    const double disc = std::sqrt(model.mu * model.mu + 2.0 * model.q * s2);
    // Roots of s2/2 u^2 + mu u - q. Written to avoid cancellation when |mu| >> sqrt(q).
    ExtremaRates rates;
    if (model.mu >= 0.0) {
        rates.beta_minus = (model.mu + disc) / s2;
        rates.beta_plus = 2.0 * model.q / (s2 * rates.beta_minus);
    } else {
        rates.beta_plus = (-model.mu + disc) / s2;
        rates.beta_minus = 2.0 * model.q / (s2 * rates.beta_plus);
    }
    return rates;
}

double sample_killing(const LevyModel& model, std::uint64_t seed) {
    auto rng = make_stream(seed, 0, stream_tag::killing);
    boost::random::exponential_distribution<double> expo(model.q);
    return expo(rng);
}

GridPath sample_path(const LevyModel& model, double horizon, double step, std::uint64_t seed) {
    model.validate();
    if (!(step > 0.0)) throw std::invalid_argument("path step must be positive");
    if (!(horizon >= step)) throw std::invalid_argument("horizon must be at least one step");

    const auto n = static_cast<std::size_t>(std::floor(horizon / step + 1e-9));
    GridPath path;
    path.times.resize(n + 1);
    path.values.resize(n + 1);
    IncrementSampler inc(model, step, make_stream(seed, 0, stream_tag::increments));
    path.times[0] = 0.0;
    path.values[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        path.times[i] = static_cast<double>(i) * step;
        path.values[i] = path.values[i - 1] + inc.next();
    }
    path.killed_at = sample_killing(model, seed);
    return path;
}

double mgf_extremum(const LevyModel& model, Side side, double u) {
    const ExtremaRates rates = extrema_rates(model);
    if (side == Side::sup) {
        if (u >= rates.beta_plus)
            throw DomainError("sup MGF undefined for u >= beta_plus = " + std::to_string(rates.beta_plus));
        return rates.beta_plus / (rates.beta_plus - u);
    }
    if (u <= -rates.beta_minus)
        throw DomainError("inf MGF undefined for u <= -beta_minus = " + std::to_string(-rates.beta_minus));
    return rates.beta_minus / (rates.beta_minus + u);
}

double grid_extremum_shift(const LevyModel& model, double step) {
    constexpr double kBroadieGlassermanKou = 0.5825971579390106;
    return kBroadieGlassermanKou * model.sigma * std::sqrt(step);
}

std::size_t steps_before(double killed_at, double step) {
    return static_cast<std::size_t>(std::floor(killed_at / step));
}

IncrementSampler::IncrementSampler(const LevyModel& model, double step, Xoshiro256pp rng)
    : step_(step),
      mu_(model.mu),
      sigma_(model.sigma),
      drift_(model.mu * step),
      scale_(model.sigma * std::sqrt(step)),
      rng_(rng) {}

double IncrementSampler::next_block(std::size_t substeps) {
    if (substeps == 1) return next();
    const double dt = step_ * static_cast<double>(substeps);
    return mu_ * dt + sigma_ * std::sqrt(dt) * normal_(rng_);
}

}  // namespace atstop
