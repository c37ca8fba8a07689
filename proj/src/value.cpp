#include "atstop/value.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/random/exponential_distribution.hpp>

#include "atstop/argmax_eta.hpp"

namespace atstop {

namespace {

double poly_eval(const std::vector<double>& p, double z) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& p) {
    if (p.size() <= 1) return {};
    std::vector<double> d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
    return d;
}

// e^{L + s z} * sum_m (-1)^m P^{(m)}(z) / s^{m+1}, the antiderivative of
// e^{L + s z} P(z); zero at an infinite end where the exponential decays.
double exp_poly_antiderivative(const std::vector<double>& p, double s, double log_scale, double z) {
    if (std::isinf(z)) return 0.0;
    double sum = 0.0;
    double sign = 1.0;
    double power = s;
    auto d = p;
    while (!d.empty()) {
        sum += sign * poly_eval(d, z) / power;
        d = poly_derivative(d);
        sign = -sign;
        power *= s;
    }
    return std::exp(log_scale + s * z) * sum;
}

double exp_poly_integral(const std::vector<double>& p, double s, double log_scale, double a, double b) {
    if (!(a < b)) return 0.0;
    if ((std::isinf(b) && s >= 0.0) || (std::isinf(a) && s <= 0.0))
        throw std::domain_error("value_one_sided: divergent tail integral");
    return exp_poly_antiderivative(p, s, log_scale, b) - exp_poly_antiderivative(p, s, log_scale, a);
}

struct Walk {
    double pos;
    std::size_t k;
    bool entered;
};

// Block thresholds: a block of m = 2^j grid steps is taken only when the
// region is at least thresholds[j] away.
std::array<double, 11> block_thresholds(const LevyModel& model, double step) {
    std::array<double, 11> t{};
    for (std::size_t j = 0; j < t.size(); ++j) {
        const double span = static_cast<double>(std::size_t{1} << j) * step;
        t[j] = 8.0 * model.sigma * std::sqrt(span) + std::abs(model.mu) * span;
    }
    return t;
}

Walk walk_to_entry(const Region& region, double pos, std::size_t k, std::size_t max_steps, IncrementSampler& inc,
                   const std::array<double, 11>& thresholds) {
    while (true) {
        if (region.contains(pos)) return {pos, k, true};
        if (k >= max_steps) return {pos, k, false};
        const double d = region.distance(pos);
        std::size_t j = 0;
        while (j + 1 < thresholds.size() && d >= thresholds[j + 1] && k + (std::size_t{2} << j) <= max_steps) ++j;
        const std::size_t m = std::size_t{1} << j;
        pos += inc.next_block(m);
        k += m;
    }
}

double gap_tail(const RewardExpr& g, const Region& region, double pos) {
    const auto gap = region.gap_around(pos);
    double worst = 0.0;
    if (std::isfinite(gap.lo)) worst = std::max(worst, std::abs(eval(g, gap.lo)));
    if (std::isfinite(gap.hi)) worst = std::max(worst, std::abs(eval(g, gap.hi)));
    return worst;
}

std::size_t horizon_steps(double horizon, double step) {
    return static_cast<std::size_t>(std::floor(horizon / step + 1e-9));
}

void check_options(const McOptions& options) {
    if (!(options.step > 0.0)) throw std::invalid_argument("Monte Carlo step must be positive");
    if (options.paths < 2) throw std::invalid_argument("Monte Carlo needs at least two paths");
    if (options.horizon_cap < 0.0) throw std::invalid_argument("horizon_cap must be non-negative");
}

}  // namespace

double value_one_sided(const StoppingProblem& problem, const StoppingSolution& solution, double x) {
    const auto kind = problem.eta.kind;
    if (kind != EtaKind::monotone_sup && kind != EtaKind::monotone_inf)
        throw std::invalid_argument("value_one_sided needs a monotone eta mode; use value_mc");
    const auto rates = extrema_rates(problem.model);
    const auto img = image_under(problem, *eta_law_at(problem, x));
    const bool sup = kind == EtaKind::monotone_sup;

    double total = 0.0;
    for (const auto& iv : solution.region.intervals()) {
        const double lo = sup ? std::max(iv.lo, x) : iv.lo;
        const double hi = sup ? iv.hi : std::min(iv.hi, x);
        if (!(lo < hi)) continue;
        for (const auto& term : img.terms) {
            if (sup) {
                const double beta = rates.beta_plus;
                total += beta * exp_poly_integral(term.poly, term.rate - beta, beta * x, lo, hi);
            } else {
                const double beta = rates.beta_minus;
                total += beta * exp_poly_integral(term.poly, term.rate + beta, -beta * x, lo, hi);
            }
        }
    }
    return total;
}

double value_one_sided(const StoppingProblem& problem, double x) {
    return value_one_sided(problem, stopping_region(problem), x);
}

double region_value_exact(const LevyModel& model, const RewardExpr& g, const Region& region, double x) {
    if (region.empty()) return 0.0;
    if (region.contains(x)) return eval(g, x);
    const auto rates = extrema_rates(model);
    const auto gap = region.gap_around(x);
    const double bp = rates.beta_plus;
    const double bm = rates.beta_minus;

    if (std::isinf(gap.lo)) return eval(g, gap.hi) * std::exp(-bp * (gap.hi - x));
    if (std::isinf(gap.hi)) return eval(g, gap.lo) * std::exp(-bm * (x - gap.lo));

    const double d1 = x - gap.lo;
    const double d2 = gap.hi - x;
    const double theta = bp + bm;
    const double denom = -std::expm1(-theta * (d1 + d2));
    const double w_hi = std::exp(-bp * d2) * -std::expm1(-theta * d1) / denom;
    const double w_lo = std::exp(-bm * d1) * -std::expm1(-theta * d2) / denom;
    return eval(g, gap.lo) * w_lo + eval(g, gap.hi) * w_hi;
}

double default_horizon(const LevyModel& model) { return std::log(1e8) / model.q; }

ValueEstimate value_mc(const LevyModel& model, const RewardExpr& g, const Region& region, double x,
                       const McOptions& options) {
    model.validate();
    check_options(options);
    ValueEstimate out;
    out.samples = options.paths;
    out.horizon = options.horizon_cap > 0.0 ? options.horizon_cap : default_horizon(model);
    if (region.contains(x)) {
        out.mean = eval(g, x);
        return out;
    }
    if (region.empty()) return out;

    const auto max_steps = horizon_steps(out.horizon, options.step);
    const auto thresholds = block_thresholds(model, options.step);
    std::vector<double> payoff(options.paths);
    std::vector<double> tail(options.paths);
    parallel_for(
        options.paths,
        [&](std::size_t i) {
            IncrementSampler inc(model, options.step, make_stream(options.seed, i, stream_tag::increments));
            const auto w = walk_to_entry(region, x, 0, max_steps, inc, thresholds);
            if (w.entered) {
                payoff[i] = std::exp(-model.q * static_cast<double>(w.k) * options.step) * eval(g, w.pos);
                tail[i] = 0.0;
            } else {
                payoff[i] = 0.0;
                tail[i] = gap_tail(g, region, w.pos);
            }
        },
        options.threads);

    const auto s = summarize(payoff);
    out.mean = s.mean;
    out.std_error = s.std_error;
    for (double t : tail)
        if (t > 0.0 || std::isnan(t)) ++out.capped;
    out.tail_bound = std::exp(-model.q * out.horizon) * pairwise_sum(tail) / static_cast<double>(options.paths);
    return out;
}

ValueEstimate value_mc(const StoppingProblem& problem, const StoppingSolution& solution, double x,
                       const McOptions& options) {
    return value_mc(problem.model, problem.reward, solution.region, x, options);
}

ValueEstimate value_definition_mc(const StoppingProblem& problem, const StoppingSolution& solution, double x,
                                  const McOptions& options) {
    if (problem.eta.kind == EtaKind::empirical)
        throw std::invalid_argument("value_definition_mc needs a closed-form eta law at the entry point");
    const auto& model = problem.model;
    model.validate();
    check_options(options);

    ValueEstimate out;
    out.samples = options.paths;
    out.horizon = options.horizon_cap > 0.0 ? options.horizon_cap : default_horizon(model);
    const auto& region = solution.region;
    const bool law_depends_on_entry = problem.eta.kind == EtaKind::two_sided;
    std::shared_ptr<TransformImage> fixed;
    if (!law_depends_on_entry)
        fixed = std::make_shared<TransformImage>(image_under(problem, *eta_law_at(problem, x)));

    const auto max_steps = horizon_steps(out.horizon, options.step);
    const auto thresholds = block_thresholds(model, options.step);
    std::vector<double> payoff(options.paths);
    std::vector<char> capped(options.paths, 0);

    parallel_for(
        options.paths,
        [&](std::size_t i) {
            auto killing_rng = make_stream(options.seed, i, stream_tag::killing);
            boost::random::exponential_distribution<double> expo(model.q);
            const std::size_t n_kill = steps_before(expo(killing_rng), options.step);

            IncrementSampler inc(model, options.step, make_stream(options.seed, i, stream_tag::increments));
            ArgmaxTracker tracker(problem.reward, x);
            double X = 0.0;
            tracker.observe(0.0, X, 0);
            bool entered = region.contains(x);
            double entry = x;
            for (std::size_t k = 1; k <= n_kill; ++k) {
                X += inc.next();
                tracker.observe(static_cast<double>(k) * options.step, X, k);
                if (!entered && region.contains(x + X)) {
                    entered = true;
                    entry = x + X;
                }
            }
            const double eta = tracker.result().value;

            if (!law_depends_on_entry) {
                payoff[i] = positive_image(problem, *fixed, x + eta);
                return;
            }
            if (!entered) {
                const auto w = walk_to_entry(region, x + X, n_kill, std::max(max_steps, n_kill), inc, thresholds);
                entry = w.pos;
                capped[i] = w.entered ? 0 : 1;
            }
            const auto img = image_under(problem, *eta_law_at(problem, entry));
            payoff[i] = positive_image(problem, img, x + eta);
        },
        options.threads);

    const auto s = summarize(payoff);
    out.mean = s.mean;
    out.std_error = s.std_error;
    for (char c : capped) out.capped += static_cast<std::size_t>(c);
    return out;
}

}  // namespace atstop
