// Acceptance checks. Run with --criterion k (1..7) or --all; prints one
// verdict line per criterion and exits 0 iff every selected one passes.
// Statistical checks use seed k for criterion k.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "atstop/argmax_eta.hpp"
#include "atstop/atransform.hpp"
#include "atstop/monte_carlo.hpp"
#include "atstop/rng.hpp"
#include "atstop/solver.hpp"
#include "atstop/value.hpp"
#include "atstop/verify.hpp"

using namespace atstop;

namespace {

const LevyModel standard{0.0, 1.0, 0.02};
const RewardExpr two_sided({{1.0, 0, 0.1}, {1.0, 0, -0.05}, {-2.0, 0, 0.0}});

constexpr double kUpper = 8.667759410625662;
constexpr double kLower = -16.59405229554123;

class Verdict {
public:
    void check(bool ok, const std::string& what) {
        fmt::print("  [{}] {}\n", ok ? "ok" : "FAILED", what);
        pass_ = pass_ && ok;
    }
    void info(const std::string& what) { fmt::print("  [info] {}\n", what); }
    [[nodiscard]] bool pass() const { return pass_; }

private:
    bool pass_ = true;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

StoppingProblem monotone_problem(const RewardExpr& g) { return make_problem(standard, g, EtaMode{}); }
StoppingProblem two_sided_problem() { return make_problem(standard, two_sided, two_sided_mode_for(two_sided)); }

McOptions mc(std::uint64_t seed, std::size_t paths = 100000) {
    McOptions o;
    o.paths = paths;
    o.step = 0.01;
    o.seed = seed;
    return o;
}

std::string line(const CheckReport& r) {
    const double z = r.std_error > 0.0 ? (r.estimate - r.target) / r.std_error : 0.0;
    return fmt::format("{} x={:g}: est {:.6g} target {:.6g} se {:.3g} allow {:.3g} z {:+.2f}", r.name, r.x,
                       r.estimate, r.target, r.std_error, r.allowance, z);
}

void report_group(Verdict& v, const std::string& label, const std::vector<CheckReport>& reports, bool gating = true) {
    std::size_t ok = 0;
    for (const auto& r : reports) ok += r.pass ? 1 : 0;
    for (const auto& r : reports)
        if (!r.pass) fmt::print("    fail: {}\n", line(r));
    const auto text = fmt::format("{}: {}/{} within band", label, ok, reports.size());
    if (gating) v.check(ok == reports.size(), text);
    else v.info(text);
}

bool criterion1() {
    Verdict v;
    const auto t0 = Clock::now();
    const auto p = monotone_problem(RewardExpr::positive_power(1));
    const auto s = stopping_region(p);
    v.check(s.boundaries.size() == 1 && std::abs(s.boundaries[0].x - 5.0) <= 1e-9,
            fmt::format("(x+)^1 boundary {:.15g}, expected 5", s.boundaries.empty() ? NAN : s.boundaries[0].x));
    const double exact = 5.0 * std::exp(-1.0);
    const double closed = value_one_sided(p, s, 0.0);
    v.check(std::abs(closed - exact) <= 1e-9, fmt::format("closed-form V(0) {:.15g} vs 5/e {:.15g}", closed, exact));
    const auto est = value_mc(p, s, 0.0, mc(1));
    v.check(std::abs(est.mean - exact) <= 3.0 * est.std_error,
            fmt::format("entry-time MC V(0) {:.6g} +- {:.3g} (z {:+.2f}, {} paths, step 0.01)", est.mean, est.std_error,
                        (est.mean - exact) / est.std_error, est.samples));
    const double secs = seconds_since(t0);
    v.check(secs < 60.0, fmt::format("runtime {:.1f} s < 60 s", secs));
    return v.pass();
}

bool criterion2() {
    Verdict v;
    const auto p = monotone_problem(RewardExpr::positive_power(2));
    const auto s = stopping_region(p);
    v.check(s.boundaries.size() == 1 && std::abs(s.boundaries[0].x - 10.0) <= 1e-9,
            fmt::format("(x+)^2 boundary {:.15g}, expected 10", s.boundaries.empty() ? NAN : s.boundaries[0].x));
    const std::vector<double> levels{8.0, 9.0, 11.0, 12.0};
    const std::vector<double> xs{0.0};
    const auto reports = check_dominance(p, s, threshold_strategies(levels), xs, mc(2));
    for (const auto& r : reports) v.info(line(r));
    report_group(v, "thresholds 8, 9, 11, 12 do not beat S at x=0", reports);
    return v.pass();
}

bool criterion3() {
    Verdict v;
    const auto t0 = Clock::now();
    const auto p = two_sided_problem();
    const auto s = stopping_region(p);
    v.check(s.boundaries.size() == 2, fmt::format("{} boundaries found, expected 2", s.boundaries.size()));
    if (s.boundaries.size() == 2) {
        const double lo = s.boundaries[0].x;
        const double hi = s.boundaries[1].x;
        v.check(std::abs(hi - kUpper) <= 1e-8, fmt::format("upper boundary {:.15g} vs {:.15g}", hi, kUpper));
        v.check(std::abs(lo - kLower) <= 1e-8, fmt::format("lower boundary {:.15g} vs {:.15g}", lo, kLower));
        const double sw = two_sided_switch_point(0.1, 0.05);
        v.check(lo < sw, fmt::format("lower boundary below the switch point {:.15g}", sw));
        std::size_t nodes = 0;
        std::size_t wrong = 0;
        const auto& g = p.grid;
        for (double x = g.lo; x <= g.hi; x += g.step) {
            if (std::abs(x - lo) < 1e-6 || std::abs(x - hi) < 1e-6) continue;
            const double img = s.image_at(x);
            const bool inside = x > lo && x < hi;
            wrong += (inside ? img < 0.0 : img > 0.0) ? 0 : 1;
            ++nodes;
        }
        v.check(wrong == 0, fmt::format("image sign: negative strictly between, positive outside ({} of {} nodes wrong)",
                                        wrong, nodes));
    }
    const double secs = seconds_since(t0);
    v.check(secs < 30.0, fmt::format("runtime {:.2f} s < 30 s", secs));
    return v.pass();
}

bool criterion4() {
    Verdict v;
    const std::vector<double> us{-0.1, -0.05, 0.05, 0.1};
    const std::vector<std::pair<double, std::vector<double>>> frozen{
        {-10.0, {1.889187962205920, 1.316497128788951, 0.8168362045443820, 0.7774787044607471}},
        {-6.0, {1.4839552702847880, 1.180994297909300, 0.9523390354240336, 1.182711396381879}}};
    for (const auto& [x, values] : frozen)
        for (std::size_t i = 0; i < us.size(); ++i) {
            const double m = eta_mgf_two_sided(0.1, 0.05, 0.02, x, us[i]);
            v.info(fmt::format("closed-form MGF x={:g} u={:g}: {:.15g} vs independent quadrature {:.15g}{}", x, us[i],
                               m, values[i], std::abs(m - values[i]) <= 1e-10 * values[i] ? "" : " MISMATCH"));
        }
    const auto p = two_sided_problem();
    const std::vector<double> xs{-10.0, -6.0, 0.0, 5.0};
    const auto reports = check_eta_law(p, xs, us, 100000, 0.01, 4);
    for (const auto& r : reports)
        if (r.pass) fmt::print("    {}\n", line(r));
    report_group(v, "pathwise argmax MGF matches the closed-form law", reports);
    if (!v.pass())
        v.info("the closed-form law sends eta to +M or -M using one exponential M; the pathwise argmax compares g "
               "at the running sup and the running inf, two different variables. The gap (tens of SE, far above the "
               "grid allowance) is a property of the model, not of the sampler: the same sampler reproduces Exp(beta) "
               "for the one-sided reward (criterion 5)");
    return v.pass();
}

bool criterion5() {
    Verdict v;
    const auto t0 = Clock::now();
    const auto p = two_sided_problem();
    const auto opts = mc(5);
    report_group(v, "averaging (4 laws x 4 rewards x 5 points)", run_suite("averaging", p, opts));
    report_group(v, "martingale t=0.5,1,2", run_suite("martingale", p, opts));
    report_group(v, "dominance (12 perturbed strategies x 3 start points)", run_suite("dominance", p, opts));

    const auto lin = monotone_problem(RewardExpr::positive_power(1));
    const auto sl = stopping_region(lin);
    const std::vector<double> xs{-10.0, 0.0, 10.0};
    const auto identity = check_value_identity(lin, sl, xs, opts);
    for (const auto& r : identity) v.info(line(r));
    report_group(v, "definition value equals entry value, (x+)^1", identity);
    const double secs = seconds_since(t0);
    v.check(secs < 600.0, fmt::format("runtime {:.1f} s < 600 s", secs));

    const auto s2 = stopping_region(p);
    const std::vector<double> x0{0.0};
    const auto info = check_value_identity(p, s2, x0, mc(5, 20000));
    for (const auto& r : info) v.info("not gating, two-sided: " + line(r));
    v.info("the two-sided definition value uses the pathwise argmax, whose law differs from the closed form "
           "(criterion 4), so it is not expected to match");
    return v.pass();
}

bool criterion6() {
    Verdict v;
    std::vector<LawPtr> laws = standard_averaging_laws();
    laws.push_back(std::make_shared<TwoSidedEtaLaw>(0.1, 0.05, 0.2, -10.0));
    const auto rewards = standard_averaging_rewards();
    std::size_t points = 0;
    double worst = 0.0;
    for (const auto& law : laws)
        for (const auto& g : rewards) {
            const auto img = transform(g, *law);
            const auto dimg = transform(derivative(g), *law);
            const auto dimg2 = differentiate(img);
            for (int i = 0; i < 50; ++i) {
                const double x = -20.0 + 40.0 * i / 49.0;
                const double h = 1e-3;
                const double fd = (eval_image(img, x + h) - eval_image(img, x - h)) / (2.0 * h);
                const double exact = eval_image(dimg, x);
                const double scale = std::max(1.0, std::abs(exact));
                worst = std::max({worst, std::abs(fd - exact) / scale,
                                  std::abs(eval_image(dimg2, x) - exact) / scale});
                ++points;
            }
        }
    v.check(worst <= 1e-6, fmt::format("derivative commutes with the transform: worst relative error {:.2e} over {} "
                                       "points (floor 1 on the scale)",
                                       worst, points));

    bool linear = true;
    for (const auto& law : laws)
        for (std::size_t i = 0; i < rewards.size(); ++i)
            for (std::size_t j = 0; j < rewards.size(); ++j) {
                const auto& f = rewards[i];
                const auto& g = rewards[j];
                const auto lhs = transform(f.scaled(2.5) + g.scaled(-0.75), *law);
                const auto rhs = combine(transform(f, *law), 2.5, transform(g, *law), -0.75);
                for (double y : {-7.0, 0.0, 4.0})
                    linear = linear && std::abs(eval_image(lhs, y) - eval_image(rhs, y)) <=
                                           1e-12 * (1.0 + std::abs(eval_image(rhs, y)));
            }
    v.check(linear, "transform is linear term by term");

    double drift = 0.0;
    for (const auto& p : {monotone_problem(RewardExpr::positive_power(1)), monotone_problem(RewardExpr::positive_power(2)),
                          two_sided_problem()}) {
        const auto base = stopping_region(p);
        for (double k : {0.5, 3.0, 100.0}) {
            auto q = p;
            q.reward = p.reward.scaled(k);
            const auto s = stopping_region(q);
            if (s.boundaries.size() != base.boundaries.size()) {
                drift = INFINITY;
                continue;
            }
            for (std::size_t i = 0; i < s.boundaries.size(); ++i)
                drift = std::max(drift, std::abs(s.boundaries[i].x - base.boundaries[i].x));
        }
    }
    v.check(drift <= 1e-9, fmt::format("boundaries invariant under positive scaling (max shift {:.2e})", drift));
    return v.pass();
}

bool criterion7() {
    Verdict v;
    const DegenerateLaw zero(0.0);
    double worst = 0.0;
    for (double nu : {-0.5, -1.0, -2.5})
        for (double y : {0.5, 1.0, 3.0, 10.0})
            worst = std::max(worst, std::abs(transform_power(zero, nu, y) - std::pow(y, nu)) / std::pow(y, nu));
    v.check(worst <= 1e-9, fmt::format("point mass: image of y^nu is y^nu (worst relative error {:.2e})", worst));

    const ExponentialLaw expo(0.2);
    double worst_exp = 0.0;
    for (double y : {0.5, 2.0, 5.0, 20.0}) {
        const double closed = 1.0 / y + 1.0 / (0.2 * y * y);
        worst_exp = std::max(worst_exp, std::abs(transform_power(expo, -1.0, y) - closed) / closed);
    }
    v.check(worst_exp <= 1e-8, fmt::format("Exp(0.2), nu=-1: 1/y + 1/(0.2 y^2) (worst relative error {:.2e}, value "
                                           "at 5: {:.12g})",
                                           worst_exp, transform_power(expo, -1.0, 5.0)));
    const double half = transform_power(expo, -0.5, 2.0);
    v.check(std::abs(half - 1.5909902576697319) <= 1e-8,
            fmt::format("Exp(0.2), nu=-0.5 at 2: {:.15g} vs 1.5909902576697319", half));

    const std::size_t n = 100000;
    for (double nu : {-0.5, -1.0}) {
        const double y = 2.0;
        const auto values = sample_indexed(n, [&](std::size_t i) {
            auto rng = make_stream(7, i, stream_tag::law_draw);
            return transform_power(expo, nu, y + expo.draw(rng));
        });
        const auto s = summarize(values);
        const double target = std::pow(y, nu);
        v.check(std::abs(s.mean - target) <= 3.0 * s.std_error,
                fmt::format("averaging y^{:g} at y=2: {:.6g} +- {:.2g} vs {:.6g} ({} draws)", nu, s.mean, s.std_error,
                            target, n));
    }
    return v.pass();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "run one criterion (1-7); default all")->check(CLI::Range(1, 7));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<bool()>>> criteria{
        {"(x+)^1: boundary, closed-form value, entry-time MC", criterion1},
        {"(x+)^2: boundary and threshold dominance", criterion2},
        {"two-sided reward: boundaries and image sign", criterion3},
        {"two-sided reward: pathwise eta law", criterion4},
        {"statistical suites", criterion5},
        {"transform calculus", criterion6},
        {"fractional powers", criterion7},
    };
    bool all = true;
    for (std::size_t k = 1; k <= criteria.size(); ++k) {
        if (only != 0 && static_cast<int>(k) != only) continue;
        fmt::print("criterion {}: {}\n", k, criteria[k - 1].first);
        std::fflush(stdout);
        bool ok = false;
        try {
            ok = criteria[k - 1].second();
        } catch (const std::exception& e) {
            fmt::print("  [FAILED] exception: {}\n", e.what());
        }
        fmt::print("{} criterion {}\n", ok ? "PASS" : "FAIL", k);
        std::fflush(stdout);
        all = all && ok;
    }
    return all ? 0 : 1;
}
