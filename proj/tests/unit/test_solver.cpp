#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "atstop/argmax_eta.hpp"
#include "atstop/solver.hpp"

using namespace atstop;

namespace {

const LevyModel standard{0.0, 1.0, 0.02};
const RewardExpr two_sided({{1.0, 0, 0.1}, {1.0, 0, -0.05}, {-2.0, 0, 0.0}});

StoppingProblem monotone(const RewardExpr& g, EtaKind kind = EtaKind::monotone_sup) {
    EtaMode mode;
    mode.kind = kind;
    return make_problem(standard, g, mode);
}

StoppingProblem fig2() { return make_problem(standard, two_sided, two_sided_mode_for(two_sided)); }

}  // namespace

TEST_SUITE("solver") {
    TEST_CASE("image of the linear reward") {
        const auto p = monotone(RewardExpr::positive_power(1));
        CHECK(image_at(p, 2.0) == doctest::Approx(-3.0));
        CHECK(image_at(p, 7.5) == doctest::Approx(2.5));
    }

    TEST_CASE("two-sided image above the switch point") {
        const auto p = fig2();
        for (double x : {-4.0, 0.0, 8.0})
            CHECK(image_at(p, x) == doctest::Approx(0.5 * std::exp(0.1 * x) + 1.25 * std::exp(-0.05 * x) - 2.0));
        CHECK(image_at(p, -20.0) > 0.0);
        CHECK(image_at(p, -10.0) < 0.0);
    }

    TEST_CASE("constant reward stops immediately") {
        const auto p = monotone(RewardExpr({{1.0, 0, 0.0}}));
        CHECK(image_at(p, 3.0) == doctest::Approx(1.0));
        const auto s = stopping_region(p);
        CHECK(s.boundaries.empty());
        REQUIRE(s.region.intervals().size() == 1);
        CHECK(s.region.intervals()[0] == Interval{-kInf, kInf});
    }

    TEST_CASE("slow exponential stops immediately") {
        const auto s = stopping_region(monotone(RewardExpr({{1.0, 0, 0.1}})));
        CHECK(s.region == Region::everything());
    }

    TEST_CASE("linear and quadratic positive-part boundaries") {
        const auto lin = stopping_region(monotone(RewardExpr::positive_power(1)));
        REQUIRE(lin.boundaries.size() == 1);
        CHECK(std::abs(lin.boundaries[0].x - 5.0) < 1e-9);
        CHECK(lin.region == Region::above(lin.boundaries[0].x));
        CHECK(lin.root_bound == 1);
        CHECK_FALSE(lin.inconclusive);

        const auto sq = stopping_region(monotone(RewardExpr::positive_power(2)));
        REQUIRE(sq.boundaries.size() == 1);
        CHECK(std::abs(sq.boundaries[0].x - 10.0) < 1e-9);
    }

    TEST_CASE("two-sided boundaries and sign change") {
        const auto p = fig2();
        const auto s = stopping_region(p);
        REQUIRE(s.boundaries.size() == 2);
        CHECK(std::abs(s.boundaries[0].x - -16.59405229554123) < 1e-8);
        CHECK(std::abs(s.boundaries[1].x - 8.667759410625662) < 1e-8);
        CHECK(s.boundaries[0].x < two_sided_switch_point(0.1, 0.05));
        for (const auto& b : s.boundaries) {
            CHECK(b.residual <= 1e-9);
            const double d = 10.0 * p.tol * (1.0 + std::abs(b.x));
            CHECK(image_at(p, b.x - d) * image_at(p, b.x + d) < 0.0);
        }
        REQUIRE(s.region.intervals().size() == 2);
        CHECK(s.region.intervals()[0].lo == -kInf);
        CHECK(s.region.intervals()[1].hi == kInf);
        CHECK(s.image_at(0.0) == doctest::Approx(-0.25));
    }

    TEST_CASE("positive scaling leaves the boundaries unchanged") {
        for (const auto& g : {RewardExpr::positive_power(1), RewardExpr::positive_power(2), two_sided}) {
            auto p = g.positive_part() ? monotone(g) : fig2();
            const auto base = stopping_region(p);
            p.reward = g.scaled(3.0);
            const auto scaled = stopping_region(p);
            REQUIRE(base.boundaries.size() == scaled.boundaries.size());
            for (std::size_t i = 0; i < base.boundaries.size(); ++i)
                CHECK(std::abs(base.boundaries[i].x - scaled.boundaries[i].x) <= 1e-9);
        }
    }

    TEST_CASE("co-monotonicity report") {
        const auto lin = stopping_region(monotone(RewardExpr::positive_power(1)));
        CHECK(lin.comonotone.pass());
        REQUIRE(lin.comonotone.intervals.size() == 1);
        CHECK(lin.comonotone.intervals[0].cells_checked > 0);

        const auto fig = stopping_region(fig2());
        CHECK(fig.comonotone.pass());
        CHECK(fig.comonotone.intervals.size() == 2);

        const auto adversarial = stopping_region(monotone(RewardExpr({{1.0, 0, 0.1}, {-10.0, 0, 0.09}})));
        CHECK(adversarial.comonotone.intervals.size() == 1);
        CHECK(adversarial.comonotone.intervals[0].cells_checked > 0);

        // y e^{-0.1y}: g turns down at 10, its image only at 40/3
        const auto hump = stopping_region(monotone(RewardExpr({{1.0, 1, -0.1}})));
        REQUIRE(hump.boundaries.size() == 1);
        CHECK(hump.boundaries[0].x == doctest::Approx(10.0 / 3.0));
        CHECK_FALSE(hump.comonotone.pass());
        for (const auto& c : hump.comonotone.intervals[0].violations) {
            CHECK(c.lo >= 10.0 - 0.5);
            CHECK(c.hi <= 40.0 / 3.0 + 0.5);
        }
    }

    TEST_CASE("reward negative on the computed set is an error") {
        CHECK_THROWS_AS((void)stopping_region(monotone(RewardExpr({{1.0, 1, 0.0}}), EtaKind::monotone_inf)),
                        std::domain_error);
    }

    TEST_CASE("empirical mode flags statistically unresolved signs") {
        StoppingProblem p = monotone(RewardExpr::positive_power(1));
        p.eta.kind = EtaKind::empirical;
        p.eta.empirical_samples = 1000;
        p.eta.empirical_step = 0.05;
        p.grid = {1.0, 9.0, 2.0};
        const auto e = image_estimate_at(p, 3.0);
        CHECK(e.std_error > 0.0);
        CHECK(e.value < 0.0);
        const auto s = stopping_region(p);
        REQUIRE(s.boundaries.size() == 1);
        CHECK(std::abs(s.boundaries[0].x - 5.0) < 1.0);
        CHECK(s.inconclusive);
    }

    TEST_CASE("problem validation") {
        auto p = monotone(RewardExpr::positive_power(1));
        CHECK_NOTHROW(p.validate());
        auto bad = p;
        bad.grid = {1.0, 1.0, 0.5};
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = p;
        bad.tol = 0.0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad = p;
        bad.reward = RewardExpr();
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        auto ts = fig2();
        ts.model.mu = 0.1;
        CHECK_THROWS_AS(ts.validate(), std::invalid_argument);
        ts = fig2();
        ts.eta.a = 0.2;
        CHECK_THROWS_AS(ts.validate(), std::invalid_argument);
        bad = p;
        bad.eta.kind = EtaKind::empirical;
        bad.eta.empirical_samples = 10;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }

    TEST_CASE("two-sided mode detection and mode names") {
        const auto m = two_sided_mode_for(two_sided.scaled(2.0));
        CHECK(m.a == 0.1);
        CHECK(m.b == 0.05);
        CHECK_THROWS_AS((void)two_sided_mode_for(RewardExpr({{1.0, 0, 0.1}, {2.0, 0, -0.05}})), std::invalid_argument);
        CHECK_THROWS_AS((void)two_sided_mode_for(RewardExpr({{1.0, 1, 0.1}, {1.0, 0, -0.05}})), std::invalid_argument);
        CHECK_THROWS_AS((void)two_sided_mode_for(RewardExpr({{1.0, 0, 0.1}})), std::invalid_argument);
        for (auto k : {EtaKind::monotone_sup, EtaKind::monotone_inf, EtaKind::two_sided, EtaKind::empirical})
            CHECK(parse_eta_kind(to_string(k)) == k);
        CHECK_THROWS_AS((void)parse_eta_kind("sideways"), std::invalid_argument);
    }

    TEST_CASE("default grid") {
        const auto g = default_grid(standard, two_sided, two_sided_mode_for(two_sided));
        CHECK(g.lo == doctest::Approx(-4.620981203732968 - 250.0));
        CHECK(g.hi == doctest::Approx(-4.620981203732968 + 250.0));
        CHECK(g.step == 0.5);
        CHECK(problem_center(fig2()) == doctest::Approx(-4.620981203732968));
    }
}
