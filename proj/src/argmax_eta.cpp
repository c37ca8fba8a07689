#include "atstop/argmax_eta.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/random/exponential_distribution.hpp>
#include <fmt/format.h>

#include "atstop/errors.hpp"
#include "atstop/monte_carlo.hpp"

namespace atstop {

ArgmaxResult argmaxproc_of_path(const GridPath& path, const RewardExpr& g, double x) {
    if (path.values.empty() || path.values.size() != path.times.size())
        throw std::invalid_argument("argmaxproc_of_path: empty or inconsistent path");
    ArgmaxTracker tracker(g, x);
    for (std::size_t i = 0; i < path.values.size(); ++i) {
        if (path.times[i] > path.killed_at) break;
        tracker.observe(path.times[i], path.values[i], i);
    }
    return tracker.result();
}

namespace {

double eta_draw(const LevyModel& model, const RewardExpr& g, double x, double step, std::uint64_t seed,
                std::uint64_t index) {
    auto killing_rng = make_stream(seed, index, stream_tag::killing);
    boost::random::exponential_distribution<double> expo(model.q);
    const double killed_at = expo(killing_rng);
    const std::size_t n = steps_before(killed_at, step);

    IncrementSampler inc(model, step, make_stream(seed, index, stream_tag::increments));
    ArgmaxTracker tracker(g, x);
    double value = 0.0;
    tracker.observe(0.0, value, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        value += inc.next();
        tracker.observe(static_cast<double>(i) * step, value, i);
    }
    return tracker.result().value;
}

}  // namespace

double sample_eta(const LevyModel& model, const RewardExpr& g, double x, double step, std::uint64_t seed) {
    model.validate();
    if (!(step > 0.0)) throw std::invalid_argument("sample_eta: step must be positive");
    return eta_draw(model, g, x, step, seed, 0);
}

std::vector<double> sample_eta_batch(const LevyModel& model, const RewardExpr& g, double x, double step,
                                     std::size_t count, std::uint64_t seed, unsigned threads) {
    model.validate();
    if (!(step > 0.0)) throw std::invalid_argument("sample_eta: step must be positive");
    return sample_indexed(
        count, [&](std::size_t i) { return eta_draw(model, g, x, step, seed, i); }, threads);
}

// --- two-sided law ----------------------------------------------------------

double two_sided_switch_point(double a, double b) {
    if (!(a > b && b > 0.0)) throw std::invalid_argument("two-sided reward needs a > b > 0");
    return std::log(b / a) / (a + b);
}

double two_sided_threshold(double a, double b, double x) {
    const double switch_point = two_sided_switch_point(a, b);
    if (x >= switch_point) return 0.0;

    // log f(u) for f(u) = sinh(bu)/sinh(au), overflow-free for large u.
    auto log_f = [a, b](double u) {
        return -(a - b) * u + std::log(-std::expm1(-2.0 * b * u)) - std::log(-std::expm1(-2.0 * a * u));
    };
    const double target = (a + b) * x;

    double lo = 0.0;
    double hi = 1.0;
    while (log_f(hi) > target) {
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (log_f(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

TwoSidedEtaLaw::TwoSidedEtaLaw(double a, double b, double beta, double x)
    : a_(a), b_(b), beta_(beta), x_(x) {
    if (!(beta > a && a > b && b > 0.0))
        throw std::invalid_argument(fmt::format("two-sided law needs beta > a > b > 0 (beta={}, a={}, b={})", beta, a, b));
    sup_branch_ = x >= two_sided_switch_point(a, b);
    c_ = sup_branch_ ? 0.0 : two_sided_threshold(a, b, x);
}

std::string TwoSidedEtaLaw::tag() const {
    return fmt::format("twosided:{},{},{},{}", a_, b_, beta_, x_);
}

double TwoSidedEtaLaw::mgf_unchecked(double u) const {
    const double up = beta_ / (beta_ - u);
    if (sup_branch_) return up;
    const double down = beta_ / (beta_ + u);
    return up * std::exp(-c_ * (beta_ - u)) - down * std::exp(-c_ * (beta_ + u)) + down;
}

series::Series TwoSidedEtaLaw::series_unchecked(double a, int k) const {
    auto up = series::pole(beta_, a, k);
    for (auto& c : up) c *= beta_;
    if (sup_branch_) return up;

    auto down = series::pole(-beta_, a, k);
    for (auto& c : down) c *= -beta_;

    // e^{-c(beta - u)} and e^{-c(beta + u)} around u = a, prefactors folded in
    // so that large c never overflows.
    const auto size = static_cast<std::size_t>(k) + 1;
    series::Series grow(size), decay(size);
    double g = std::exp(-c_ * (beta_ - a));
    double d = std::exp(-c_ * (beta_ + a));
    for (std::size_t j = 0; j < size; ++j) {
        if (j > 0) {
            g *= c_ / static_cast<double>(j);
            d *= -c_ / static_cast<double>(j);
        }
        grow[j] = g;
        decay[j] = d;
    }
    const auto first = series::multiply(up, grow);
    const auto second = series::multiply(down, decay);
    series::Series out(size);
    for (std::size_t j = 0; j < size; ++j) out[j] = first[j] - second[j] + down[j];
    return out;
}

double TwoSidedEtaLaw::draw(Xoshiro256pp& rng) const {
    boost::random::exponential_distribution<double> expo(beta_);
    const double m = expo(rng);
    if (sup_branch_ || m >= c_) return m;
    return -m;
}

double eta_mgf_two_sided(double a, double b, double q, double x, double u) {
    if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
    const double beta = std::sqrt(2.0 * q);
    const TwoSidedEtaLaw law(a, b, beta, x);
    if (!(std::abs(u) < beta))
        throw DomainError(fmt::format("two-sided eta MGF needs |u| < sqrt(2q) = {}, got {}", beta, u));
    return law.mgf(u);
}

// --- empirical law ----------------------------------------------------------

EmpiricalLaw::EmpiricalLaw(std::vector<double> samples) : EmpiricalLaw(std::move(samples), false) {}

EmpiricalLaw::EmpiricalLaw(std::vector<double> samples, bool skip_size_check) : samples_(std::move(samples)) {
    if (!skip_size_check && samples_.size() < kMinEmpiricalSamples)
        throw std::invalid_argument(
            fmt::format("empirical law needs at least {} samples, got {}", kMinEmpiricalSamples, samples_.size()));
    if (samples_.empty()) throw std::invalid_argument("empirical law needs samples");
}

std::string EmpiricalLaw::tag() const { return fmt::format("empirical:{}", samples_.size()); }

double EmpiricalLaw::mgf_unchecked(double u) const {
    double acc = 0.0;
    for (double s : samples_) acc += std::exp(u * s);
    return acc / static_cast<double>(samples_.size());
}

series::Series EmpiricalLaw::series_unchecked(double a, int k) const {
    const auto size = static_cast<std::size_t>(k) + 1;
    series::Series out(size, 0.0);
    for (double s : samples_) {
        double term = std::exp(a * s);
        for (std::size_t j = 0; j < size; ++j) {
            out[j] += term;
            term *= s;
        }
    }
    double factorial = 1.0;
    for (std::size_t j = 0; j < size; ++j) {
        if (j > 0) factorial *= static_cast<double>(j);
        out[j] = out[j] / static_cast<double>(samples_.size()) / factorial;
    }
    return out;
}

double EmpiricalLaw::draw(Xoshiro256pp& rng) const {
    const auto n = samples_.size();
    auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
    if (idx >= n) idx = n - 1;
    return samples_[idx];
}

double EmpiricalLaw::mgf_stderr(double u) const {
    const auto n = static_cast<double>(samples_.size());
    if (samples_.size() < 2) return 0.0;
    std::vector<double> values(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) values[i] = std::exp(u * samples_[i]);
    const double total = pairwise_sum(values);
    std::vector<double> loo(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) loo[i] = (total - values[i]) / (n - 1.0);
    const double mean_loo = pairwise_sum(loo) / n;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (loo[i] - mean_loo) * (loo[i] - mean_loo);
    return std::sqrt((n - 1.0) / n * pairwise_sum(sq));
}

double EmpiricalLaw::jackknife_stderr(const std::function<double(const NuLaw&)>& statistic, int groups) const {
    if (groups < 2) throw std::invalid_argument("jackknife needs at least two groups");
    const std::size_t n = samples_.size();
    const auto g = static_cast<std::size_t>(groups);
    if (n < g) throw std::invalid_argument("jackknife: fewer samples than groups");

    std::vector<double> replicate(g);
    for (std::size_t k = 0; k < g; ++k) {
        const std::size_t begin = k * n / g;
        const std::size_t end = (k + 1) * n / g;
        std::vector<double> kept;
        kept.reserve(n - (end - begin));
        kept.insert(kept.end(), samples_.begin(), samples_.begin() + static_cast<std::ptrdiff_t>(begin));
        kept.insert(kept.end(), samples_.begin() + static_cast<std::ptrdiff_t>(end), samples_.end());
        replicate[k] = statistic(EmpiricalLaw(std::move(kept), true));
    }
    double mean = 0.0;
    for (double v : replicate) mean += v;
    mean /= static_cast<double>(g);
    double ss = 0.0;
    for (double v : replicate) ss += (v - mean) * (v - mean);
    return std::sqrt(static_cast<double>(g - 1) / static_cast<double>(g) * ss);
}

std::shared_ptr<const EmpiricalLaw> empirical_law(std::vector<double> samples) {
    return std::make_shared<const EmpiricalLaw>(std::move(samples));
}

}  // namespace atstop
