#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "erdoslab/consecutive.hpp"
#include "erdoslab/prime_constants.hpp"
#include "erdoslab/scan.hpp"
#include "oracles.hpp"

using namespace erdoslab;

TEST_CASE("names") {
    CHECK(parse_arith_fn("omega") == ArithFn::OMEGA);
    CHECK(parse_arith_fn("BigOmega") == ArithFn::BIG_OMEGA);
    CHECK(parse_arith_fn("tau") == ArithFn::TAU);
    CHECK_FALSE(parse_arith_fn("sigma").has_value());
}

TEST_CASE("equal_density at x = 10") {
    // omega(n) = omega(n+1) for n = 2, 3, 4, 7, 8 among n <= 10.
    CHECK(equal_density(ArithFn::OMEGA, 10) == doctest::Approx(0.5));
    CHECK_THROWS(equal_density(ArithFn::OMEGA, 9));
}

TEST_CASE("equal_density against brute force") {
    const std::uint64_t x = 5000;
    std::uint64_t w = 0, W = 0, t = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        const auto a = oracle::counts(n), b = oracle::counts(n + 1);
        w += a.omega == b.omega;
        W += a.big_omega == b.big_omega;
        t += oracle::naive_tau(n) == oracle::naive_tau(n + 1);
    }
    CHECK(equal_density(ArithFn::OMEGA, x) == doctest::Approx(double(w) / x));
    CHECK(equal_density(ArithFn::BIG_OMEGA, x) == doctest::Approx(double(W) / x));
    CHECK(equal_density(ArithFn::TAU, x) == doctest::Approx(double(t) / x));
}

TEST_CASE("density_scan agrees with pointwise densities") {
    const std::vector<std::uint64_t> grid{100, 1000, 12345};
    const auto rows = density_scan(ArithFn::BIG_OMEGA, grid, default_normalization(ArithFn::BIG_OMEGA));
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.density == doctest::Approx(equal_density(ArithFn::BIG_OMEGA, r.x)));
        CHECK(r.density == doctest::Approx(double(r.count) / r.x));
        CHECK(r.b_shift == doctest::Approx(kB6));
        REQUIRE(r.normalized.has_value());
        CHECK(*r.normalized == doctest::Approx(*normalize_density(r.density, r.x, kB6, 1)));
    }
}

TEST_CASE("normalization is undefined when the shifted loglog is not positive") {
    // log log 20 + B5 < 0.
    CHECK_FALSE(normalize_density(0.3, 20, kB5, 1).has_value());
    CHECK(normalize_density(0.3, 1'000'000, kB5, 1).has_value());
}

TEST_CASE("impute_B inverts the Gaussian prediction") {
    for (const double B : {-1.3, 0.2, 2.1}) {
        const std::uint64_t x = 10'000'000;
        const double d = 0.7 / (2 * std::sqrt(std::numbers::pi * (loglog(double(x)) + B)));
        CHECK(impute_B(d, x, 0.7) == doctest::Approx(B).epsilon(1e-12));
        const auto nd = normalize_density(d, x, B, 0.7);
        REQUIRE(nd.has_value());
        CHECK(*nd == doctest::Approx(1.0));
    }
}

TEST_CASE("difference histograms") {
    const std::uint64_t x = 3000;
    const auto h = diff_histogram(ArithFn::OMEGA, x);
    CHECK(h.total() == x);
    std::int64_t sum = 0;
    for (std::uint64_t n = 1; n <= x; ++n)
        sum += std::int64_t(oracle::counts(n + 1).omega) - std::int64_t(oracle::counts(n).omega);
    CHECK(h.mean() == doctest::Approx(double(sum) / x));
    CHECK(h.counts.at(0) == std::uint64_t(equal_density(ArithFn::OMEGA, x) * x + 0.5));

    const auto t = diff_histogram(ArithFn::TAU, x);
    std::uint64_t pow2 = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        auto a = oracle::naive_tau(n), b = oracle::naive_tau(n + 1);
        const auto g = oracle::gcd(a, b);
        a /= g;
        b /= g;
        pow2 += (a & (a - 1)) == 0 && (b & (b - 1)) == 0;
    }
    CHECK(t.total() == pow2);
    CHECK(t.counts.at(0) == std::uint64_t(std::llround(equal_density(ArithFn::TAU, x) * x)));
}

TEST_CASE("predicted_count integrates to the total") {
    const Normalization n = default_normalization(ArithFn::BIG_OMEGA);
    double s = 0;
    for (std::int64_t m = -60; m <= 60; ++m) s += predicted_count(ArithFn::BIG_OMEGA, 1'000'000, m, n);
    CHECK(s == doctest::Approx(1e6).epsilon(1e-6));
}

TEST_CASE("covariance helpers") {
    const std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8};
    CHECK(covariance(a, b) == doctest::Approx(2.5));
    CHECK_THROWS(covariance(a, std::vector<double>{1, 2}));

    const std::uint64_t x = 2000;
    double sa = 0, sb = 0, sab = 0;
    for (std::uint64_t n = 1; n < x; ++n) {
        const double u = oracle::counts(n).omega, v = oracle::counts(n + 1).omega;
        sa += u, sb += v, sab += u * v;
    }
    const double m = double(x - 1);
    CHECK(neighbor_covariance(ArithFn::OMEGA, x) == doctest::Approx(sab / m - (sa / m) * (sb / m)));
}

TEST_CASE("moment_check at a small x") {
    const std::uint64_t x = 100000;
    double s = 0;
    for (std::uint64_t n = 1; n <= x; ++n) s += oracle::counts(n).omega;
    CHECK(moment_check(x).mean_omega == doctest::Approx(s / x - loglog(double(x))));
}

TEST_CASE("scan_grid") {
    const auto g = scan_grid(100000);
    CHECK(g.front() == 10);
    CHECK(g.back() == 100000);
    CHECK(std::is_sorted(g.begin(), g.end()));
    CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
}

TEST_CASE("B5-normalized omega density at 1e7 is of order one") {
    const auto v = normalized_density(ArithFn::OMEGA, 10'000'000, kB5, 1);
    REQUIRE(v.has_value());
    CHECK(*v > 0.7);
    CHECK(*v < 1.3);
}

TEST_CASE("imputed B for Omega at 1e7 lies in [0, 4]") {
    const std::uint64_t x = 10'000'000;
    const double b = impute_B(equal_density(ArithFn::BIG_OMEGA, x), x, 1.0);
    CHECK(b >= 0);
    CHECK(b <= 4);
}
