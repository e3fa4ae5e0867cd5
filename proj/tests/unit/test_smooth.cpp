#include <stdexcept>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "erdoslab/prime_constants.hpp"
#include "erdoslab/smooth.hpp"
#include "oracles.hpp"

using namespace erdoslab;

TEST_CASE("rho on [0, 2] has a closed form") {
    CHECK(dickman_rho(0.5) == 1.0);
    CHECK(dickman_rho(1.0) == 1.0);
    for (const double u : {1.25, 1.5, 2.0}) {
        CHECK(std::abs(dickman_rho(u) - (1 - std::log(u))) < 1e-5);
    }
    CHECK_THROWS(dickman_rho(-1));
}

TEST_CASE("rho on [2, 3] against independent quadrature") {
    // rho(u) = rho(2) - int_2^u rho(t-1)/t dt with rho(t-1) = 1 - log(t-1).
    using boost::math::quadrature::gauss_kronrod;
    for (const double u : {2.5, 3.0}) {
        const double integral = gauss_kronrod<double, 31>::integrate(
            [](double t) { return (1 - std::log(t - 1)) / t; }, 2.0, u);
        const double expected = 1 - std::log(2.0) - integral;
        CHECK(std::abs(dickman_rho(u) - expected) < 1e-5);
    }
    CHECK(dickman_rho(3.0) == doctest::Approx(0.0486083883).epsilon(1e-4));
}

TEST_CASE("rho is positive and decreasing") {
    const auto t = build_dickman_table(8.0);
    CHECK(t.u_max() == doctest::Approx(8.0));
    double prev = 1.0;
    for (double u = 1.01; u <= 8.0; u += 0.01) {
        const double r = t(u);
        REQUIRE(r > 0);
        REQUIRE(r < prev);
        prev = r;
    }
    CHECK(t(5.0) == doctest::Approx(3.547247e-4).epsilon(1e-3));
    CHECK_THROWS(t(8.5));
    CHECK_THROWS(build_dickman_table(4.0, 0.01));
}

TEST_CASE("smooth_threshold") {
    CHECK(smooth_threshold(1'000'000, 2) == 1000);
    CHECK(smooth_threshold(1'000'000, 3) == 100);
    CHECK(smooth_threshold(999'999, 3) == 99);
    CHECK(smooth_threshold(1000, 1) == 1000);
    CHECK_THROWS(smooth_threshold(1000, 0.5));
}

TEST_CASE("smooth densities against trial division") {
    const std::uint64_t x = 20000;
    for (const double u : {1.5, 2.0, 3.0}) {
        const auto y = smooth_threshold(x, u);
        std::uint64_t c = 0;
        for (std::uint64_t n = 1; n <= x; ++n) c += oracle::counts(n).lpf <= y;
        CHECK(smooth_density(x, u) == doctest::Approx(double(c) / x));
    }
    const auto y2 = smooth_threshold(x, 2), y3 = smooth_threshold(x, 3);
    std::uint64_t pc = 0;
    for (std::uint64_t n = 1; n <= x; ++n) pc += oracle::counts(n).lpf <= y2 && oracle::counts(n + 1).lpf <= y3;
    CHECK(pair_density(x, 2, 3) == doctest::Approx(double(pc) / x));
    CHECK_THROWS(smooth_density(999, 2));
    CHECK_THROWS(smooth_density(x, 20));
}

TEST_CASE("smooth density tracks the second-order Dickman approximation") {
    const std::uint64_t x = 1'000'000;
    for (const double u : {1.5, 2.0}) {
        const double approx =
            dickman_rho(u) + (1 - double(kEulerGamma)) * dickman_rho(u - 1) / std::log(double(x));
        CHECK(std::abs(smooth_density(x, u) - approx) < 0.01);
    }
}

TEST_CASE("pair table is consistent with single-shot functions") {
    const std::uint64_t x = 50000;
    const std::vector<double> us{1.5, 2.0}, vs{2.0, 3.0};
    const auto rows = smooth_pair_table(x, us, vs);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(r.pair_density == doctest::Approx(pair_density(x, r.u, r.v)));
        CHECK(r.density_u == doctest::Approx(smooth_density(x, r.u)));
        CHECK(r.rho_v == doctest::Approx(dickman_rho(r.v)));
        CHECK(r.pair_density <= std::min(r.density_u, r.density_v) + 1.0 / x);
    }
}

TEST_CASE("rho grid-halving self-consistency") {
    const auto a = build_dickman_table(10.0, 1e-3);
    const auto b = build_dickman_table(10.0, 5e-4);
    const auto c = build_dickman_table(10.0, 2.5e-4);
    for (double u = 1.5; u <= 10.0; u += 0.5) {
        CAPTURE(u);
        // Second-order convergence puts the ratio at 4 itself, so allow rounding.
        CHECK(std::abs(a(u) - b(u)) <= 4 * std::abs(b(u) - c(u)) * (1 + 1e-6) + 1e-16);
    }
}

TEST_CASE("boundary and monotonicity properties of the densities") {
    const std::uint64_t x = 100000;
    CHECK(smooth_density(x, 1) == 1.0);
    // Only n = x can fail, and only when x + 1 is prime (100003 is, 100001 = 11 * 9091 is not).
    CHECK(pair_density(x, 1, 1) == 1.0);
    CHECK(pair_density(100002, 1, 1) == doctest::Approx(1 - 1.0 / 100002).epsilon(1e-12));
    double prev = 1.0;
    for (double u = 1.25; u <= 4; u += 0.25) {
        const double d = smooth_density(x, u);
        CHECK(d <= prev);
        prev = d;
    }
    // Swapping u and v shifts the sequence by one, changing at most two boundary terms.
    CHECK(std::abs(pair_density(x, 2, 3) - pair_density(x, 3, 2)) < 0.01);
}
