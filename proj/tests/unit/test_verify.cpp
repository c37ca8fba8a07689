#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "atstop/verify.hpp"

using namespace atstop;

namespace {

const LevyModel standard{0.0, 1.0, 0.02};
const RewardExpr two_sided({{1.0, 0, 0.1}, {1.0, 0, -0.05}, {-2.0, 0, 0.0}});

StoppingProblem lin_problem() { return make_problem(standard, RewardExpr::positive_power(1), EtaMode{}); }

McOptions small(std::size_t paths, std::uint64_t seed = 11) {
    McOptions o;
    o.paths = paths;
    o.step = 0.01;
    o.seed = seed;
    return o;
}

}  // namespace

TEST_SUITE("verify") {
    TEST_CASE("band rule") {
        CHECK(within_band(1.0, 1.3, 0.1, 0.0));
        CHECK_FALSE(within_band(1.0, 1.31, 0.1, 0.0));
        CHECK(within_band(1.0, 1.31, 0.1, 0.02));
        CHECK(describe(two_sided) == "1*e^(-0.05y)-2+1*e^(0.1y)");
        CHECK(describe(RewardExpr::positive_power(2)) == "pos(1*y^2)");
    }

    TEST_CASE("averaging with a point mass is exact") {
        const DegenerateLaw zero(0.0);
        const std::vector<double> ys{-2.0, 0.0, 3.0};
        for (const auto& r : check_averaging(zero, two_sided, ys, 50, 1)) {
            CHECK(r.std_error <= 1e-15);
            CHECK(r.pass);
        }
    }

    TEST_CASE("averaging a square under Exp(0.2)") {
        const std::vector<double> ys{3.0};
        const auto r = check_averaging(*parse_law_spec("exp:0.2"), RewardExpr({{1.0, 2, 0.0}}), ys, 20000, 3);
        REQUIRE(r.size() == 1);
        CHECK(r[0].target == doctest::Approx(9.0));
        CHECK(r[0].pass);
    }

    TEST_CASE("standard error shrinks like one over root n") {
        const std::vector<double> ys{0.0};
        const RewardExpr g({{1.0, 0, 0.05}});
        const auto law = parse_law_spec("bm:0,1,1");
        const auto a = check_averaging(*law, g, ys, 4000, 5);
        const auto b = check_averaging(*law, g, ys, 16000, 5);
        const double ratio = a[0].std_error / b[0].std_error;
        CHECK(ratio >= 1.8);
        CHECK(ratio <= 2.2);
    }

    TEST_CASE("averaging is reproducible") {
        const std::vector<double> ys{-5.0, 5.0};
        const auto law = parse_law_spec("negexp:0.2");
        const auto a = check_averaging(*law, two_sided, ys, 3000, 9);
        const auto b = check_averaging(*law, two_sided, ys, 3000, 9);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].estimate == b[i].estimate);
    }

    TEST_CASE("martingale at time zero is exact") {
        const std::vector<double> times{0.0};
        const auto r = check_martingale(standard, two_sided, times, 100, 0.01, 1);
        REQUIRE(r.size() == 1);
        CHECK(r[0].estimate == doctest::Approx(0.0));
        CHECK(r[0].std_error == 0.0);
        CHECK(r[0].pass);
    }

    TEST_CASE("martingale of an exponential") {
        const std::vector<double> times{0.5, 1.25};
        for (const auto& r : check_martingale(standard, RewardExpr({{1.0, 0, 0.1}}), times, 5000, 0.01, 2)) {
            CHECK(r.target == 1.0);
            CHECK(r.pass);
        }
        CHECK_THROWS_AS((void)check_martingale(standard, two_sided, std::vector<double>{-1.0}, 10, 0.01, 1),
                        std::invalid_argument);
    }

    TEST_CASE("perturbed strategies") {
        const auto p = make_problem(standard, two_sided, two_sided_mode_for(two_sided));
        const auto s = stopping_region(p);
        const auto strategies = boundary_perturbations(s);
        CHECK(strategies.size() == 12);
        const std::vector<double> levels{8.0, 9.0};
        CHECK(threshold_strategies(levels)[1].region == Region::above(9.0));
    }

    TEST_CASE("dominance against a worse threshold and immediate stopping") {
        const auto p = lin_problem();
        const auto s = stopping_region(p);
        const std::vector<Strategy> strategies{{"threshold7", Region::above(7.0)}, {"now", Region::everything()}};
        const std::vector<double> xs{0.0};
        const auto r = check_dominance(p, s, strategies, xs, small(4000));
        REQUIRE(r.size() == 2);
        CHECK(r[0].pass);
        CHECK(r[0].estimate < r[0].target);
        CHECK(r[1].estimate == 0.0);
        CHECK(r[1].pass);
    }

    TEST_CASE("eta law checks") {
        const auto p = lin_problem();
        const std::vector<double> xs{0.0};
        const std::vector<double> zero{0.0};
        const auto r = check_eta_law(p, xs, zero, 200, 0.05, 1);
        REQUIRE(r.size() == 1);
        CHECK(r[0].estimate == 1.0);
        CHECK(r[0].target == 1.0);
        CHECK(r[0].pass);

        auto e = p;
        e.eta.kind = EtaKind::empirical;
        CHECK_THROWS_AS((void)check_eta_law(e, xs, zero, 200, 0.05, 1), std::invalid_argument);
    }

    TEST_CASE("suites") {
        const auto p = lin_problem();
        CHECK_THROWS_AS((void)run_suite("nonsense", p, small(10)), std::invalid_argument);
        const auto r = run_suite("averaging", p, small(200));
        CHECK(r.size() == 4 * 4 * 5);
        const auto xs = standard_start_points(p);
        CHECK(xs == std::vector<double>{-10.0, 0.0, 10.0});
    }
}
