#include "atstop/nu_law.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <fmt/format.h>

#include "atstop/errors.hpp"

namespace atstop {

void NuLaw::check_domain(double u) const {
    const MgfDomain d = domain();
    if (!d.contains(u))
        throw DomainError(fmt::format("MGF of {} evaluated at u = {} outside its validity interval ({}, {})",
                                      tag(), u, d.lo, d.hi));
}

double NuLaw::mgf(double u) const {
    check_domain(u);
    return mgf_unchecked(u);
}

series::Series NuLaw::mgf_series(double a, int k) const {
    if (k < 0) throw std::invalid_argument("taylor order must be non-negative");
    if (k > max_order())
        throw InsufficientMomentsError(
            fmt::format("law {} provides derivatives up to order {}, {} requested", tag(), max_order(), k));
    check_domain(a);
    return series_unchecked(a, k);
}

std::vector<double> NuLaw::taylor(double a, int k) const {
    return series::to_derivatives(mgf_series(a, k));
}

double NuLaw::moment(int k) const {
    return taylor(0.0, k)[static_cast<std::size_t>(k)];
}

double NuLaw::sample(std::uint64_t seed) const {
    auto rng = make_stream(seed, 0, stream_tag::law_draw);
    return draw(rng);
}

// --- degenerate -------------------------------------------------------------

std::string DegenerateLaw::tag() const { return fmt::format("const:{}", value_); }

series::Series DegenerateLaw::series_unchecked(double a, int k) const {
    return series::exponential(value_, a, k);
}

// --- sup-type exponential ---------------------------------------------------

ExponentialLaw::ExponentialLaw(double beta) : beta_(beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("exponential law rate must be positive");
}

std::string ExponentialLaw::tag() const { return fmt::format("exp:{}", beta_); }

MgfDomain ExponentialLaw::domain() const {
    return {-std::numeric_limits<double>::infinity(), beta_};
}

double ExponentialLaw::draw(Xoshiro256pp& rng) const {
    boost::random::exponential_distribution<double> expo(beta_);
    return expo(rng);
}

series::Series ExponentialLaw::series_unchecked(double a, int k) const {
    auto s = series::pole(beta_, a, k);
    for (auto& c : s) c *= beta_;
    return s;
}

// --- inf-type exponential ---------------------------------------------------

NegExponentialLaw::NegExponentialLaw(double beta) : beta_(beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("exponential law rate must be positive");
}

std::string NegExponentialLaw::tag() const { return fmt::format("negexp:{}", beta_); }

MgfDomain NegExponentialLaw::domain() const {
    return {-beta_, std::numeric_limits<double>::infinity()};
}

double NegExponentialLaw::draw(Xoshiro256pp& rng) const {
    boost::random::exponential_distribution<double> expo(beta_);
    return -expo(rng);
}

series::Series NegExponentialLaw::series_unchecked(double a, int k) const {
    // beta/(beta+u) = -beta/((-beta) - u)
    auto s = series::pole(-beta_, a, k);
    for (auto& c : s) c *= -beta_;
    return s;
}

// --- Gaussian ---------------------------------------------------------------

GaussianLaw::GaussianLaw(double mean, double variance) : mean_(mean), variance_(variance) {
    if (!(variance >= 0.0) || !std::isfinite(mean) || !std::isfinite(variance))
        throw std::invalid_argument("Gaussian law needs finite mean and non-negative variance");
}

std::string GaussianLaw::tag() const { return fmt::format("normal:{},{}", mean_, variance_); }

double GaussianLaw::draw(Xoshiro256pp& rng) const {
    boost::random::normal_distribution<double> normal;
    return mean_ + std::sqrt(variance_) * normal(rng);
}

series::Series GaussianLaw::series_unchecked(double a, int k) const {
    // log M(a + h) = log M(a) + (m + v a) h + v h^2 / 2
    series::Series exponent(static_cast<std::size_t>(k) + 1, 0.0);
    exponent[0] = mean_ * a + 0.5 * variance_ * a * a;
    if (k >= 1) exponent[1] = mean_ + variance_ * a;
    if (k >= 2) exponent[2] = 0.5 * variance_;
    return series::exp(exponent);
}

// --- factories --------------------------------------------------------------

LawPtr law_at_time(const LevyModel& model, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
    return std::make_shared<GaussianLaw>(model.mu * t, model.sigma * model.sigma * t);
}

LawPtr extremum_law(const LevyModel& model, Side side) {
    const ExtremaRates rates = extrema_rates(model);
    if (side == Side::sup) return std::make_shared<ExponentialLaw>(rates.beta_plus);
    return std::make_shared<NegExponentialLaw>(rates.beta_minus);
}

namespace {

double parse_number(std::string_view text, std::string_view spec) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty())
        throw std::invalid_argument(fmt::format("malformed number '{}' in law spec '{}'", text, spec));
    return value;
}

}  // namespace

LawPtr parse_law_spec(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument(fmt::format("law spec '{}' must look like kind:params", spec));
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view params = spec.substr(colon + 1);

    if (kind == "exp") return std::make_shared<ExponentialLaw>(parse_number(params, spec));
    if (kind == "negexp") return std::make_shared<NegExponentialLaw>(parse_number(params, spec));
    if (kind == "bm") {
        std::vector<double> values;
        std::size_t start = 0;
        while (true) {
            const auto comma = params.find(',', start);
            values.push_back(parse_number(params.substr(start, comma - start), spec));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (values.size() != 3)
            throw std::invalid_argument(fmt::format("law spec '{}' needs bm:<mu>,<sigma>,<t>", spec));
        LevyModel model{values[0], values[1], 1.0};
        if (!(model.sigma > 0.0)) throw std::invalid_argument("bm law needs sigma > 0");
        return law_at_time(model, values[2]);
    }
    throw std::invalid_argument(fmt::format("unknown law kind '{}' in '{}'", kind, spec));
}

}  // namespace atstop
