#include <doctest.h>

#include <cmath>
#include <numeric>

#include "atstop/monte_carlo.hpp"

using namespace atstop;

TEST_SUITE("monte_carlo") {
    TEST_CASE("pairwise sum is exact on integers and handles empty input") {
        std::vector<double> v(1000);
        std::iota(v.begin(), v.end(), 1.0);
        CHECK(pairwise_sum(v) == 500500.0);
        CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
    }

    TEST_CASE("summarize gives mean and standard error") {
        const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
        const auto s = summarize(v);
        CHECK(s.mean == doctest::Approx(2.5));
        CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
        CHECK(s.samples == 4);
    }

    TEST_CASE("summarize_column reads a row-major table") {
        const std::vector<double> t{1.0, 10.0, 3.0, 30.0};
        CHECK(summarize_column(t, 2, 1).mean == doctest::Approx(20.0));
    }

    TEST_CASE("results do not depend on the worker count") {
        auto f = [](std::size_t i) { return std::sin(static_cast<double>(i)); };
        const auto one = sample_indexed(10001, f, 1);
        const auto four = sample_indexed(10001, f, 4);
        CHECK(one == four);
        CHECK(pairwise_sum(one) == pairwise_sum(four));
    }
}
