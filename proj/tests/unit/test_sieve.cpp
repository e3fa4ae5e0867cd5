#include <stdexcept>
#include <random>

#include "doctest.h"
#include "erdoslab/errors.hpp"
#include "erdoslab/primes.hpp"
#include "erdoslab/sieve.hpp"
#include "oracles.hpp"

using namespace erdoslab;

TEST_CASE("n = 1 conventions") {
    const auto w = sieve_window(1, 1);
    CHECK(w.omega == std::vector<std::uint8_t>{0});
    CHECK(w.big_omega == std::vector<std::uint8_t>{0});
    CHECK(w.tau == std::vector<std::uint32_t>{1});
    CHECK(w.lpf == std::vector<std::uint64_t>{1});
}

TEST_CASE("small window matches trial division") {
    const auto w = sieve_window(2, 10);
    CHECK(w.omega == std::vector<std::uint8_t>{1, 1, 1, 1, 2, 1, 1, 1, 2});
    CHECK(w.big_omega == std::vector<std::uint8_t>{1, 1, 2, 1, 2, 1, 3, 2, 2});
    CHECK(w.tau == std::vector<std::uint32_t>{2, 2, 3, 2, 4, 2, 4, 3, 4});
}

TEST_CASE("prime power at the top of a large window") {
    const std::uint64_t n = std::uint64_t{1} << 20;
    const auto w = sieve_window(2, n);
    const auto i = w.index(n);
    CHECK(w.omega[i] == 1);
    CHECK(w.big_omega[i] == 20);
    CHECK(w.tau[i] == 21);
    CHECK(w.lpf[i] == 2);
}

TEST_CASE("factor") {
    CHECK(factor(1).factors.empty());
    const auto f12 = factor(12);
    REQUIRE(f12.factors.size() == 2);
    CHECK(f12.factors[0] == std::pair<std::uint64_t, unsigned>{2, 2});
    CHECK(f12.factors[1] == std::pair<std::uint64_t, unsigned>{3, 1});
    const auto f = factor(9973);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].first == 9973);
    CHECK(f.valuation(9973) == 1);
    CHECK(f12.valuation(5) == 0);
    CHECK_THROWS_AS(factor(0), std::invalid_argument);

    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
        const std::uint64_t n = rng() % 1'000'000'000'000ull + 1;
        const auto g = factor(n);
        std::uint64_t prod = 1;
        std::uint64_t last = 1;
        for (const auto& [p, e] : g.factors) {
            CHECK(p > last);
            CHECK(oracle::naive_is_prime(p));
            last = p;
            for (unsigned r = 0; r < e; ++r) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("oracle equivalence up to 1e5") {
    const std::uint64_t N = 100000;
    const auto w = sieve_window(1, N);
    std::uint64_t mismatches = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const auto c = oracle::counts(n);
        const auto i = w.index(n);
        mismatches += w.omega[i] != c.omega || w.big_omega[i] != c.big_omega ||
                      w.tau[i] != oracle::naive_tau(n) || w.lpf[i] != c.lpf;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("factor-derived values agree with the sieve") {
    const auto w = sieve_window(1, 20000);
    for (std::uint64_t n = 1; n <= 20000; ++n) {
        const auto f = factor(n);
        const auto i = w.index(n);
        REQUIRE(w.omega[i] == f.omega());
        REQUIRE(w.big_omega[i] == f.big_omega());
        REQUIRE(w.tau[i] == f.tau());
        REQUIRE(w.lpf[i] == f.largest_prime());
    }
}

TEST_CASE("tau bound chain with squarefree equality") {
    const auto w = sieve_window(1, 200000);
    for (std::uint64_t n = 1; n <= 200000; ++n) {
        const auto i = w.index(n);
        const double lt = std::log2(static_cast<double>(w.tau[i]));
        REQUIRE(w.omega[i] <= lt + 1e-12);
        REQUIRE(lt <= w.big_omega[i] + 1e-12);
        const bool eq = w.tau[i] == (1u << w.omega[i]) && w.omega[i] == w.big_omega[i];
        REQUIRE(eq == factor(n).squarefree());
        REQUIRE(w.tau[i] >= 1);
        REQUIRE((w.omega[i] == 0) == (n == 1));
        REQUIRE(w.lpf[i] <= n);
    }
}

TEST_CASE("multiplicativity on coprime pairs") {
    const auto w = sieve_window(1, 1'000'000);
    for (std::uint64_t a = 1; a <= 1000; a += 7) {
        for (std::uint64_t b = 1; b <= 1000; b += 11) {
            if (oracle::gcd(a, b) != 1) continue;
            const auto ia = w.index(a), ib = w.index(b), iab = w.index(a * b);
            REQUIRE(w.tau[iab] == w.tau[ia] * w.tau[ib]);
            REQUIRE(w.omega[iab] == w.omega[ia] + w.omega[ib]);
        }
    }
}

TEST_CASE("segmentation invariance with random split points") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t a = rng() % 5'000'000'000ull + 1;
        const std::uint64_t c = a + rng() % 20000 + 2;
        const std::uint64_t b = a + rng() % (c - a);
        const auto whole = sieve_window(a, c);
        const auto left = sieve_window(a, b);
        const auto right = sieve_window(b + 1, c);
        for (std::uint64_t n = a; n <= c; ++n) {
            const auto& part = n <= b ? left : right;
            const auto i = whole.index(n), j = part.index(n);
            REQUIRE(whole.omega[i] == part.omega[j]);
            REQUIRE(whole.big_omega[i] == part.big_omega[j]);
            REQUIRE(whole.tau[i] == part.tau[j]);
            REQUIRE(whole.lpf[i] == part.lpf[j]);
        }
    }
}

TEST_CASE("sweep covers every n once with lookahead") {
    std::uint64_t next = 5;
    sweep(
        5, 1000, 3,
        [&](const FactorWindow& w, std::uint64_t last) {
            CHECK(w.lo == next);
            CHECK(w.hi == last + 3);
            next = last + 1;
        },
        97);
    CHECK(next == 1001);
}

TEST_CASE("is_smooth") {
    const auto w = sieve_window(1, 10000);
    CHECK(is_smooth(w, 1, 2));
    CHECK(is_smooth(w, 30, 5));
    CHECK_FALSE(is_smooth(w, 30, 4));
    CHECK_FALSE(is_smooth(w, 9973, 100));
    CHECK_THROWS_AS(is_smooth(w, 10001, 5), std::out_of_range);
}

TEST_CASE("rejected inputs") {
    CHECK_THROWS_AS(sieve_window(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(sieve_window(10, 5), std::invalid_argument);
    SieveConfig small;
    small.max_window = 100;
    CHECK_THROWS_AS(sieve_window(1, 1000, small), BudgetError);
    try {
        sieve_window(1, 1000, small);
    } catch (const BudgetError& e) {
        CHECK(e.required() == 1000);
        CHECK(e.budget() == 100);
    }
}

TEST_CASE("prime tables") {
    const auto p = primes_up_to(100);
    CHECK(p.size() == 25);
    CHECK(p.back() == 97);
    CHECK(primes_up_to(10'000'000).size() == 664579);
    const auto r = primes_in_range(1'000'000, 1'001'000);
    for (const auto q : r) CHECK(oracle::naive_is_prime(q));
    std::size_t count = 0;
    for (std::uint64_t n = 1'000'001; n <= 1'001'000; ++n) count += oracle::naive_is_prime(n);
    CHECK(r.size() == count);
    for (std::uint64_t n = 0; n < 5000; ++n) REQUIRE(is_prime(n) == oracle::naive_is_prime(n));
    CHECK(is_prime(18446744073709551557ull));
    CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
}
