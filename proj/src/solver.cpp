#include "atstop/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "atstop/argmax_eta.hpp"

namespace atstop {

std::string to_string(EtaKind kind) {
    switch (kind) {
        case EtaKind::monotone_sup: return "monotone_sup";
        case EtaKind::monotone_inf: return "monotone_inf";
        case EtaKind::two_sided: return "two_sided";
        case EtaKind::empirical: return "empirical";
    }
    return "unknown";
}

EtaKind parse_eta_kind(const std::string& name) {
    for (auto kind : {EtaKind::monotone_sup, EtaKind::monotone_inf, EtaKind::two_sided, EtaKind::empirical})
        if (name == to_string(kind)) return kind;
    throw std::invalid_argument(fmt::format(
        "unknown eta_mode '{}' (expected monotone_sup, monotone_inf, two_sided or empirical)", name));
}

EtaMode two_sided_mode_for(const RewardExpr& reward) {
    if (reward.positive_part()) throw std::invalid_argument("two_sided mode does not take positive-part rewards");
    const RewardTerm* up = nullptr;
    const RewardTerm* down = nullptr;
    for (const auto& t : reward.terms()) {
        if (t.n != 0) throw std::invalid_argument("two_sided mode needs pure exponential terms");
        if (t.r > 0.0 && !up)
            up = &t;
        else if (t.r < 0.0 && !down)
            down = &t;
        else if (t.r != 0.0)
            throw std::invalid_argument("two_sided mode needs exactly one increasing and one decreasing exponential");
    }
    if (!up || !down) throw std::invalid_argument("two_sided mode needs e^{a y} and e^{-b y} terms");
    if (!(up->c > 0.0) || std::abs(up->c - down->c) > 1e-12 * up->c)
        throw std::invalid_argument("two_sided mode needs equal positive coefficients on both exponentials");
    EtaMode mode;
    mode.kind = EtaKind::two_sided;
    mode.a = up->r;
    mode.b = -down->r;
    return mode;
}

void StoppingProblem::validate() const {
    model.validate();
    if (reward.empty()) throw std::invalid_argument("reward has no terms");
    if (!(std::isfinite(grid.lo) && std::isfinite(grid.hi) && grid.lo < grid.hi))
        throw std::invalid_argument(fmt::format("solver grid needs lo < hi (got {} .. {})", grid.lo, grid.hi));
    if (!(grid.step > 0.0 && std::isfinite(grid.step)))
        throw std::invalid_argument("solver grid step must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("solver tol must be positive");
    switch (eta.kind) {
        case EtaKind::two_sided: {
            if (model.mu != 0.0) throw std::invalid_argument("two_sided mode needs zero drift");
            const auto expected = two_sided_mode_for(reward);
            if (std::abs(expected.a - eta.a) > 1e-12 || std::abs(expected.b - eta.b) > 1e-12)
                throw std::invalid_argument("two_sided (a, b) do not match the reward rates");
            const double beta = std::sqrt(2.0 * model.q) / model.sigma;
            if (!(beta > eta.a && eta.a > eta.b && eta.b > 0.0))
                throw std::invalid_argument(fmt::format(
                    "two_sided mode needs sqrt(2q)/sigma > a > b > 0 (got {}, {}, {})", beta, eta.a, eta.b));
            break;
        }
        case EtaKind::empirical:
            if (eta.empirical_samples < kMinEmpiricalSamples)
                throw std::invalid_argument(
                    fmt::format("empirical mode needs at least {} samples", kMinEmpiricalSamples));
            if (!(eta.empirical_step > 0.0)) throw std::invalid_argument("empirical step must be positive");
            break;
        default: break;
    }
}

double problem_center(const StoppingProblem& problem) {
    if (problem.eta.kind == EtaKind::two_sided) return two_sided_switch_point(problem.eta.a, problem.eta.b);
    return 0.0;
}

ScanGrid default_grid(const LevyModel& model, const RewardExpr& reward, const EtaMode& eta) {
    const auto rates = extrema_rates(model);
    const double center = eta.kind == EtaKind::two_sided ? two_sided_switch_point(eta.a, eta.b) : 0.0;
    const double half = 50.0 / std::min(rates.beta_plus, rates.beta_minus);
    const double fastest = std::max({rates.beta_plus, rates.beta_minus, reward.max_abs_rate()});
    return {center - half, center + half, std::min(0.5, 0.25 / fastest)};
}

StoppingProblem make_problem(const LevyModel& model, const RewardExpr& reward, const EtaMode& eta) {
    StoppingProblem p;
    p.model = model;
    p.reward = reward;
    p.eta = eta;
    p.grid = default_grid(model, reward, eta);
    return p;
}

LawPtr eta_law_at(const StoppingProblem& problem, double x) {
    switch (problem.eta.kind) {
        case EtaKind::monotone_sup: return extremum_law(problem.model, Side::sup);
        case EtaKind::monotone_inf: return extremum_law(problem.model, Side::inf);
        case EtaKind::two_sided:
            return std::make_shared<TwoSidedEtaLaw>(problem.eta.a, problem.eta.b,
                                                    std::sqrt(2.0 * problem.model.q) / problem.model.sigma, x);
        case EtaKind::empirical: {
            const std::uint64_t seed = splitmix64(problem.eta.empirical_seed ^ std::bit_cast<std::uint64_t>(x));
            return empirical_law(sample_eta_batch(problem.model, problem.reward, x, problem.eta.empirical_step,
                                                  problem.eta.empirical_samples, seed));
        }
    }
    throw std::logic_error("eta_law_at: unknown mode");
}

TransformImage image_under(const StoppingProblem& problem, const NuLaw& law) {
    return transform(problem.reward.analytic_part(), law);
}

double image_at(const StoppingProblem& problem, double x) {
    return eval_image(image_under(problem, *eta_law_at(problem, x)), x);
}

ImageEstimate image_estimate_at(const StoppingProblem& problem, double x) {
    const auto law = eta_law_at(problem, x);
    ImageEstimate out{eval_image(image_under(problem, *law), x), 0.0};
    if (const auto* emp = dynamic_cast<const EmpiricalLaw*>(law.get())) {
        out.std_error = emp->jackknife_stderr(
            [&](const NuLaw& l) { return eval_image(image_under(problem, l), x); });
    }
    return out;
}

double positive_image(const StoppingProblem& problem, const TransformImage& img, double y) {
    if (problem.reward.positive_part() && !(y > 0.0)) return 0.0;
    return std::max(0.0, eval_image(img, y));
}

bool ComonotoneReport::pass() const noexcept {
    return std::all_of(intervals.begin(), intervals.end(), [](const auto& iv) { return iv.pass(); });
}

namespace {

bool monotone(EtaKind kind) { return kind == EtaKind::monotone_sup || kind == EtaKind::monotone_inf; }

std::function<ImageEstimate(double)> make_estimator(const StoppingProblem& problem) {
    if (monotone(problem.eta.kind)) {
        auto img = image_under(problem, *eta_law_at(problem, 0.0));
        return [img = std::move(img)](double x) { return ImageEstimate{eval_image(img, x), 0.0}; };
    }
    return [problem](double x) { return image_estimate_at(problem, x); };
}

double reward_scale(const RewardExpr& g, double x) {
    double s = 0.0;
    for (const auto& t : g.terms()) s += std::abs(t.c) * ipow(std::abs(x), t.n) * std::exp(t.r * x);
    return s;
}

std::vector<double> grid_nodes(const ScanGrid& grid) {
    const auto cells = static_cast<std::size_t>(std::ceil((grid.hi - grid.lo) / grid.step - 1e-9));
    std::vector<double> nodes(cells + 1);
    for (std::size_t i = 0; i < cells; ++i) nodes[i] = grid.lo + static_cast<double>(i) * grid.step;
    nodes[cells] = grid.hi;
    return nodes;
}

}  // namespace

StoppingSolution stopping_region(const StoppingProblem& problem) {
    problem.validate();
    const auto estimate = make_estimator(problem);
    const bool restrict_positive = problem.reward.positive_part();

    struct Node {
        double x;
        bool in;
        bool uncertain;
    };
    auto classify = [&](double x) {
        if (restrict_positive && !(x > 0.0)) return Node{x, false, false};
        const auto e = estimate(x);
        return Node{x, e.value >= 0.0, e.std_error > 0.0 && std::abs(e.value) < 3.0 * e.std_error};
    };

    std::vector<Node> nodes;
    for (double x : grid_nodes(problem.grid)) nodes.push_back(classify(x));

    StoppingSolution sol;
    std::vector<Interval> intervals;
    Interval current;
    bool open = nodes.front().in;
    current.lo = -kInf;
    current.uncertain = nodes.front().uncertain;

    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const auto& a = nodes[i];
        const auto& b = nodes[i + 1];
        if (open) current.uncertain = current.uncertain || a.uncertain;
        if (a.uncertain && !open) sol.inconclusive = true;
        if (a.in == b.in) continue;

        double lo = a.x, hi = b.x;
        while (hi - lo > problem.tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (classify(mid).in == a.in)
                lo = mid;
            else
                hi = mid;
        }
        Boundary bd;
        bd.x = 0.5 * (lo + hi);
        bd.residual = std::abs(estimate(bd.x).value);
        bd.uncertain = a.uncertain || b.uncertain;
        sol.boundaries.push_back(bd);

        if (a.in) {
            current.hi = bd.x;
            current.uncertain = current.uncertain || bd.uncertain;
            intervals.push_back(current);
            open = false;
        } else {
            current = Interval{bd.x, kInf, bd.uncertain};
            open = true;
        }
    }
    if (open) {
        current.hi = kInf;
        current.uncertain = current.uncertain || nodes.back().uncertain;
        intervals.push_back(current);
    } else if (nodes.back().uncertain) {
        sol.inconclusive = true;
    }
    sol.region = Region(intervals);
    for (const auto& iv : sol.region.intervals()) sol.inconclusive = sol.inconclusive || iv.uncertain;
    for (const auto& bd : sol.boundaries) sol.inconclusive = sol.inconclusive || bd.uncertain;

    auto check_reward = [&](double x) {
        const double gx = eval(problem.reward, x);
        if (gx < -1e-9 * std::max(1.0, reward_scale(problem.reward, x)))
            throw std::domain_error(fmt::format("reward is negative inside the stopping set (g({}) = {})", x, gx));
    };
    for (const auto& n : nodes)
        if (sol.region.contains(n.x)) check_reward(n.x);
    for (double x : sol.region.boundaries()) check_reward(x);

    if (monotone(problem.eta.kind)) {
        const auto img = image_under(problem, *eta_law_at(problem, 0.0));
        std::size_t bound = 0;
        for (const auto& t : img.terms) bound += t.poly.size();
        sol.root_bound = bound > 0 ? bound - 1 : 0;
    }
    sol.image_at = [estimate](double x) { return estimate(x).value; };
    sol.comonotone = check_comonotone(problem, sol);
    return sol;
}

ComonotoneReport check_comonotone(const StoppingProblem& problem, const StoppingSolution& solution) {
    ComonotoneReport report;
    const auto nodes = grid_nodes(problem.grid);
    std::shared_ptr<TransformImage> fixed;
    if (monotone(problem.eta.kind))
        fixed = std::make_shared<TransformImage>(image_under(problem, *eta_law_at(problem, 0.0)));

    for (const auto& iv : solution.region.intervals()) {
        ComonotoneInterval out;
        out.interval = iv;
        const double lo = std::max(iv.lo, problem.grid.lo);
        const double hi = std::min(iv.hi, problem.grid.hi);
        std::vector<double> cuts{lo};
        for (double x : nodes)
            if (x > lo && x < hi) cuts.push_back(x);
        cuts.push_back(hi);

        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double a = cuts[i], b = cuts[i + 1];
            if (!(b - a > problem.tol)) continue;
            const auto img = fixed ? *fixed : image_under(problem, *eta_law_at(problem, 0.5 * (a + b)));
            ComonotoneCell cell{a, b, (eval(problem.reward, b) - eval(problem.reward, a)) / (b - a),
                                (eval_image(img, b) - eval_image(img, a)) / (b - a)};
            ++out.cells_checked;
            const double scale = std::max({1.0, reward_scale(problem.reward, a), reward_scale(problem.reward, b)});
            const double slope_tol = 1e-9 * scale;
            if (std::abs(cell.reward_slope) > slope_tol && std::abs(cell.image_slope) > slope_tol &&
                (cell.reward_slope > 0.0) != (cell.image_slope > 0.0))
                out.violations.push_back(cell);
        }
        report.intervals.push_back(std::move(out));
    }
    return report;
}

}  // namespace atstop
