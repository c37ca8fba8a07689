#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "atstop/atransform.hpp"
#include "atstop/errors.hpp"

using namespace atstop;

namespace {

// M(u) = cos(u) near 0: vanishes at pi/2, used to hit the singular path.
class CosineLaw final : public NuLaw {
public:
    std::string tag() const override { return "cosine"; }
    MgfDomain domain() const override { return {}; }
    double draw(Xoshiro256pp&) const override { return 0.0; }

protected:
    series::Series series_unchecked(double a, int k) const override {
        series::Series s(static_cast<std::size_t>(k) + 1);
        double f = 1.0;
        for (int j = 0; j <= k; ++j) {
            if (j > 0) f *= j;
            s[static_cast<std::size_t>(j)] = std::cos(a + j * M_PI / 2) / f;
        }
        return s;
    }
};

}  // namespace

TEST_SUITE("atransform") {
    TEST_CASE("Appell polynomials of the killed supremum") {
        const ExponentialLaw law(0.2);
        const auto q1 = appell_poly(law, 1);
        CHECK(q1[0] == doctest::Approx(-5.0));
        CHECK(q1[1] == 1.0);
        const auto q2 = appell_poly(law, 2);
        CHECK(q2[0] == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(q2[1] == doctest::Approx(-10.0));
        CHECK(q2[2] == 1.0);
        CHECK(appell_poly(law, 0) == std::vector<double>{1.0});
        CHECK_THROWS_AS((void)appell_poly(law, -1), std::invalid_argument);
    }

    TEST_CASE("Appell polynomials of a standard Gaussian are Hermite polynomials") {
        const auto law = parse_law_spec("bm:0,1,1");
        const auto he4 = appell_poly(*law, 4);
        CHECK(he4[0] == doctest::Approx(3.0));
        CHECK(he4[1] == doctest::Approx(0.0));
        CHECK(he4[2] == doctest::Approx(-6.0));
        CHECK(he4[4] == doctest::Approx(1.0));
    }

    TEST_CASE("Esscher cancellation for exponentials") {
        const ExponentialLaw law(0.2);
        const auto img = transform(RewardExpr({{1.0, 0, 0.1}}), law);
        for (double y : {-3.0, 0.0, 7.0}) CHECK(eval_image(img, y) == doctest::Approx(0.5 * std::exp(0.1 * y)));
    }

    TEST_CASE("two-sided image above the switch point") {
        const ExponentialLaw law(0.2);
        const auto img = transform(RewardExpr({{1.0, 0, 0.1}, {1.0, 0, -0.05}, {-2.0, 0, 0.0}}), law);
        CHECK(eval_image(img, 0.0) == doctest::Approx(-0.25));
        CHECK(eval_image(img, 3.0) == doctest::Approx(0.5 * std::exp(0.3) + 1.25 * std::exp(-0.15) - 2.0));
    }

    TEST_CASE("rejections") {
        const ExponentialLaw law(0.2);
        CHECK_THROWS_AS((void)transform(RewardExpr::positive_power(1), law), std::invalid_argument);
        CHECK_THROWS_AS((void)transform(RewardExpr({{1.0, 0, 0.3}}), law), DomainError);
        CHECK_THROWS_AS((void)reciprocal_mgf_derivs(CosineLaw(), M_PI / 2, 2), SingularLawError);
        CHECK_NOTHROW((void)reciprocal_mgf_derivs(CosineLaw(), 0.3, 2));
    }

    TEST_CASE("reciprocal MGF derivatives") {
        const ExponentialLaw law(0.2);
        // 1/M(u) = 1 - u/0.2
        const auto d = reciprocal_mgf_derivs(law, 0.05, 3);
        CHECK(d[0] == doctest::Approx(0.75));
        CHECK(d[1] == doctest::Approx(-5.0));
        CHECK(d[2] == doctest::Approx(0.0).epsilon(1e-12));
    }

    TEST_CASE("differentiate matches finite differences") {
        const auto law = parse_law_spec("bm:0.2,1,1.5");
        const RewardExpr g({{1.0, 3, -0.1}, {2.0, 1, 0.05}, {-1.0, 0, 0.0}});
        const auto img = transform(g, *law);
        const auto d = differentiate(img);
        const double h = 1e-3;
        for (double y : {-4.0, -0.5, 2.0, 9.0}) {
            const double fd = (-eval_image(img, y + 2 * h) + 8 * eval_image(img, y + h) - 8 * eval_image(img, y - h) +
                               eval_image(img, y - 2 * h)) /
                              (12 * h);
            CHECK(eval_image(d, y) == doctest::Approx(fd).epsilon(1e-8));
        }
    }

    TEST_CASE("combine is linear") {
        const ExponentialLaw law(0.2);
        const RewardExpr f({{1.0, 2, 0.0}});
        const RewardExpr g({{1.0, 0, 0.1}});
        const auto both = combine(transform(f, law), 2.0, transform(g, law), -3.0);
        const auto direct = transform(f.scaled(2.0) + g.scaled(-3.0), law);
        for (double y : {-1.0, 4.0}) CHECK(eval_image(both, y) == doctest::Approx(eval_image(direct, y)));
    }

    TEST_CASE("fractional powers") {
        const DegenerateLaw zero;
        for (double nu : {-0.5, -1.0, -2.5})
            for (double y : {0.3, 2.0, 11.0})
                CHECK(transform_power(zero, nu, y) == doctest::Approx(std::pow(y, nu)).epsilon(1e-10));
        const ExponentialLaw law(0.2);
        CHECK(transform_power(law, -1.0, 5.0) == doctest::Approx(0.4).epsilon(1e-10));
        CHECK(transform_power(law, -0.5, 2.0) == doctest::Approx(1.5909902576697319).epsilon(1e-10));
        CHECK_THROWS_AS((void)transform_power(law, 0.5, 2.0), std::invalid_argument);
        CHECK_THROWS_AS((void)transform_power(law, -0.5, 0.0), DomainError);
        CHECK_THROWS_AS((void)transform_power(NegExponentialLaw(0.2), -0.5, 2.0), DomainError);
    }

    TEST_CASE("binomial") {
        CHECK(binomial(5, 2) == 10.0);
        CHECK(binomial(5, 0) == 1.0);
        CHECK(binomial(5, 6) == 0.0);
    }
}
