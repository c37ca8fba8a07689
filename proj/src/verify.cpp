#include "atstop/verify.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "atstop/argmax_eta.hpp"
#include "atstop/atransform.hpp"
#include "atstop/monte_carlo.hpp"

namespace atstop {

bool within_band(double estimate, double target, double std_error, double allowance) noexcept {
    return std::abs(estimate - target) <= 3.0 * std_error + allowance;
}

double roundoff_allowance(double target) noexcept { return 1e-12 * (1.0 + std::abs(target)); }

std::string describe(const RewardExpr& g) {
    std::string out;
    for (const auto& t : g.terms()) {
        std::string term = fmt::format("{:g}", t.c);
        if (t.n == 1) term += "*y";
        if (t.n > 1) term += fmt::format("*y^{}", t.n);
        if (t.r != 0.0) term += fmt::format("*e^({:g}y)", t.r);
        if (!out.empty() && t.c >= 0.0) out += "+";
        out += term;
    }
    if (out.empty()) out = "0";
    if (g.positive_part()) out = "pos(" + out + ")";
    return out;
}

std::vector<CheckReport> check_averaging(const NuLaw& law, const RewardExpr& g, std::span<const double> ys,
                                         std::size_t samples, std::uint64_t seed, unsigned threads) {
    const auto analytic = g.analytic_part();
    const auto img = transform(analytic, law);
    const auto draws = sample_indexed(
        samples,
        [&](std::size_t i) {
            auto rng = make_stream(seed, i, stream_tag::law_draw);
            return law.draw(rng);
        },
        threads);

    std::vector<CheckReport> out;
    for (double y : ys) {
        std::vector<double> values(draws.size());
        for (std::size_t i = 0; i < draws.size(); ++i) values[i] = eval_image(img, y + draws[i]);
        const auto s = summarize(values);
        CheckReport r;
        r.name = fmt::format("averaging[{};{}]", law.tag(), describe(analytic));
        r.x = y;
        r.estimate = s.mean;
        r.target = eval(analytic, y);
        r.std_error = s.std_error;
        r.allowance = roundoff_allowance(r.target);
        r.pass = within_band(r.estimate, r.target, r.std_error, r.allowance);
        r.seed = seed;
        r.samples = samples;
        out.push_back(r);
    }
    return out;
}

std::vector<CheckReport> check_martingale(const LevyModel& model, const RewardExpr& g, std::span<const double> times,
                                          std::size_t paths, double step, std::uint64_t seed, unsigned threads) {
    model.validate();
    if (!(step > 0.0)) throw std::invalid_argument("check_martingale: step must be positive");
    const auto analytic = g.analytic_part();
    std::vector<CheckReport> out;
    for (double t : times) {
        if (t < 0.0) throw std::invalid_argument("check_martingale: negative time");
        const auto img = transform(analytic, *law_at_time(model, t));
        const auto n = static_cast<std::size_t>(std::floor(t / step + 1e-9));
        const auto values = sample_indexed(
            paths,
            [&](std::size_t i) {
                IncrementSampler inc(model, step, make_stream(seed, i, stream_tag::increments));
                double X = 0.0;
                for (std::size_t k = 0; k < n; ++k) X += inc.next();
                const double rest = t - static_cast<double>(n) * step;
                if (rest > 1e-12 * step) {
                    IncrementSampler last(model, rest, make_stream(seed, i, stream_tag::law_draw));
                    X += last.next();
                }
                return eval_image(img, X);
            },
            threads);
        const auto s = summarize(values);
        CheckReport r;
        r.name = fmt::format("martingale[t={:g};{}]", t, describe(analytic));
        r.x = t;
        r.estimate = s.mean;
        r.target = eval(analytic, 0.0);
        r.std_error = s.std_error;
        r.allowance = roundoff_allowance(r.target);
        r.pass = within_band(r.estimate, r.target, r.std_error, r.allowance);
        r.seed = seed;
        r.samples = paths;
        out.push_back(r);
    }
    return out;
}

std::vector<Strategy> boundary_perturbations(const StoppingSolution& solution) {
    std::vector<Strategy> out;
    const auto bounds = solution.region.boundaries();
    for (std::size_t k = 0; k < bounds.size(); ++k)
        for (double d : {-1.0, -0.5, -0.25, 0.25, 0.5, 1.0})
            out.push_back({fmt::format("boundary{}{:+g}", k, d), solution.region.with_boundary_shifted(k, d)});
    return out;
}

std::vector<Strategy> threshold_strategies(std::span<const double> levels) {
    std::vector<Strategy> out;
    for (double b : levels) out.push_back({fmt::format("threshold{:g}", b), Region::above(b)});
    return out;
}

double grid_value_allowance(const LevyModel& model, const RewardExpr& g, const Region& region, double x,
                            double step) {
    const double delta = grid_extremum_shift(model, step);
    return std::abs(region_value_exact(model, g, region.shrunk(delta), x) - region_value_exact(model, g, region, x));
}

std::vector<CheckReport> check_dominance(const StoppingProblem& problem, const StoppingSolution& solution,
                                         std::span<const Strategy> strategies, std::span<const double> xs,
                                         const McOptions& options) {
    std::vector<CheckReport> out;
    for (double x : xs) {
        const auto optimal = value_mc(problem, solution, x, options);
        const double optimal_bias =
            grid_value_allowance(problem.model, problem.reward, solution.region, x, options.step);
        for (const auto& s : strategies) {
            const auto est = value_mc(problem.model, problem.reward, s.region, x, options);
            CheckReport r;
            r.name = fmt::format("dominance[{}]", s.label);
            r.x = x;
            r.estimate = est.mean;
            r.target = optimal.mean;
            r.std_error = std::hypot(est.std_error, optimal.std_error);
            r.allowance = optimal_bias + est.tail_bound + optimal.tail_bound +
                          grid_value_allowance(problem.model, problem.reward, s.region, x, options.step);
            r.pass = r.estimate - r.target <= 3.0 * r.std_error + r.allowance;
            r.seed = options.seed;
            r.samples = options.paths;
            out.push_back(r);
        }
    }
    return out;
}

std::vector<CheckReport> check_eta_law(const StoppingProblem& problem, std::span<const double> xs,
                                       std::span<const double> us, std::size_t samples, double step,
                                       std::uint64_t seed, unsigned threads) {
    if (problem.eta.kind == EtaKind::empirical)
        throw std::invalid_argument("check_eta_law needs a closed-form eta mode");
    const double delta = grid_extremum_shift(problem.model, step);
    std::vector<CheckReport> out;
    for (double x : xs) {
        const auto law = eta_law_at(problem, x);
        const auto eta = sample_eta_batch(problem.model, problem.reward, x, step, samples, seed, threads);
        for (double u : us) {
            std::vector<double> values(eta.size());
            for (std::size_t i = 0; i < eta.size(); ++i) values[i] = std::exp(u * eta[i]);
            const auto s = summarize(values);
            CheckReport r;
            r.name = fmt::format("etalaw[u={:g}]", u);
            r.x = x;
            r.estimate = s.mean;
            r.target = law->mgf(u);
            r.std_error = s.std_error;
            r.allowance = r.target * std::expm1(std::abs(u) * delta) + roundoff_allowance(r.target);
            r.pass = within_band(r.estimate, r.target, r.std_error, r.allowance);
            r.seed = seed;
            r.samples = samples;
            out.push_back(r);
        }
    }
    return out;
}

std::vector<CheckReport> check_value_identity(const StoppingProblem& problem, const StoppingSolution& solution,
                                              std::span<const double> xs, const McOptions& options) {
    const double delta = grid_extremum_shift(problem.model, options.step);
    std::vector<CheckReport> out;
    for (double x : xs) {
        const auto def = value_definition_mc(problem, solution, x, options);
        const auto mc = value_mc(problem, solution, x, options);
        const auto exact = [&](double at) {
            return region_value_exact(problem.model, problem.reward, solution.region, at);
        };
        const double eta_bias = std::max(std::abs(exact(x + delta) - exact(x)), std::abs(exact(x - delta) - exact(x)));
        CheckReport r;
        r.name = "identity[definition-vs-entry]";
        r.x = x;
        r.estimate = def.mean;
        r.target = mc.mean;
        r.std_error = std::hypot(def.std_error, mc.std_error);
        r.allowance = eta_bias + mc.tail_bound +
                      grid_value_allowance(problem.model, problem.reward, solution.region, x, options.step);
        r.pass = within_band(r.estimate, r.target, r.std_error, r.allowance);
        r.seed = options.seed;
        r.samples = options.paths;
        out.push_back(r);
    }
    return out;
}

std::vector<double> standard_start_points(const StoppingProblem& problem) {
    const double c = problem_center(problem);
    std::vector<double> xs;
    for (double x : {c - 10.0, 0.0, c + 10.0}) xs.push_back(std::clamp(x, problem.grid.lo, problem.grid.hi));
    return xs;
}

std::vector<LawPtr> standard_averaging_laws() {
    return {std::make_shared<DegenerateLaw>(0.0), parse_law_spec("exp:0.2"), parse_law_spec("negexp:0.2"),
            parse_law_spec("bm:0,1,1")};
}

std::vector<RewardExpr> standard_averaging_rewards() {
    return {RewardExpr({{1.0, 0, 0.05}}), RewardExpr({{1.0, 2, 0.0}}), RewardExpr({{1.0, 1, -0.05}}),
            RewardExpr({{1.0, 0, 0.1}, {1.0, 0, -0.05}, {-2.0, 0, 0.0}})};
}

std::vector<double> standard_averaging_points() { return {-5.0, -2.0, 0.0, 3.0, 5.0}; }

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> names{"averaging", "martingale", "dominance", "etalaw", "identity", "all"};
    return names;
}

std::vector<CheckReport> run_suite(const std::string& suite, const StoppingProblem& problem,
                                   const McOptions& options) {
    if (std::find(known_suites().begin(), known_suites().end(), suite) == known_suites().end())
        throw std::invalid_argument(fmt::format("unknown suite '{}'", suite));
    const bool all = suite == "all";
    const bool closed_form = problem.eta.kind != EtaKind::empirical;
    std::vector<CheckReport> out;
    auto append = [&out](std::vector<CheckReport> more) {
        out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    };

    if (all || suite == "averaging") {
        const auto ys = standard_averaging_points();
        for (const auto& law : standard_averaging_laws())
            for (const auto& g : standard_averaging_rewards())
                append(check_averaging(*law, g, ys, options.paths, options.seed, options.threads));
    }
    if (all || suite == "martingale") {
        const std::vector<double> times{0.5, 1.0, 2.0};
        append(check_martingale(problem.model, problem.reward, times, options.paths, options.step, options.seed,
                                options.threads));
    }
    const auto xs = standard_start_points(problem);
    if (all || suite == "dominance") {
        const auto solution = stopping_region(problem);
        const auto strategies = boundary_perturbations(solution);
        append(check_dominance(problem, solution, strategies, xs, options));
    }
    if ((all && closed_form) || suite == "etalaw") {
        const auto rates = extrema_rates(problem.model);
        const double beta = std::min(rates.beta_plus, rates.beta_minus);
        const std::vector<double> us{-0.5 * beta, -0.25 * beta, 0.25 * beta, 0.5 * beta};
        append(check_eta_law(problem, xs, us, options.paths, options.step, options.seed, options.threads));
    }
    if ((all && closed_form) || suite == "identity") {
        const auto solution = stopping_region(problem);
        append(check_value_identity(problem, solution, xs, options));
    }
    return out;
}

}  // namespace atstop
