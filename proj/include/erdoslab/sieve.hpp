#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace erdoslab {

// Per-integer prime-factor statistics for every n in [lo, hi].
//
// Arrays are indexed by n - lo. For n = 1 the conventions are
// omega = big_omega = 0, tau = 1, lpf = 1.
struct FactorWindow {
    std::uint64_t lo = 1;
    std::uint64_t hi = 0;
    std::vector<std::uint8_t> omega;      // distinct prime factors
    std::vector<std::uint8_t> big_omega;  // prime factors with multiplicity
    std::vector<std::uint32_t> tau;       // number of divisors
    std::vector<std::uint64_t> lpf;       // largest prime factor

    std::size_t size() const noexcept { return omega.size(); }
    bool contains(std::uint64_t n) const noexcept { return n >= lo && n <= hi; }
    // Offset of n in the arrays; throws std::out_of_range if n is outside.
    std::size_t index(std::uint64_t n) const;
};

struct Factorization {
    std::uint64_t n = 1;
    std::vector<std::pair<std::uint64_t, unsigned>> factors;  // (prime, exponent), ascending

    // Exponent of p in n, 0 if p does not divide n.
    unsigned valuation(std::uint64_t p) const noexcept;
    unsigned omega() const noexcept { return static_cast<unsigned>(factors.size()); }
    unsigned big_omega() const noexcept;
    std::uint64_t tau() const noexcept;
    std::uint64_t largest_prime() const noexcept;
    bool squarefree() const noexcept;
};

struct SieveConfig {
    // Maximum number of integers in a single window.
    std::uint64_t max_window = std::uint64_t{1} << 26;
};

// Sieves [lo, hi] by peeling every prime p <= sqrt(hi) off each multiple; the
// cofactor left over (if > 1) is the single prime factor above sqrt(hi).
FactorWindow sieve_window(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config = {});

// Canonical factorization by trial division. Slow; used as ground truth.
Factorization factor(std::uint64_t n);

// lpf(n) <= y. n = 1 is smooth for every y.
bool is_smooth(const FactorWindow& w, std::uint64_t n, double y);

// Reusable sieve holding the base primes for every window up to `hi_max`.
class WindowSieve {
public:
    explicit WindowSieve(std::uint64_t hi_max, SieveConfig config = {});

    FactorWindow window(std::uint64_t lo, std::uint64_t hi) const;
    // Same as window() but refills `out` to avoid reallocating.
    void window_into(std::uint64_t lo, std::uint64_t hi, FactorWindow& out) const;

    std::uint64_t hi_max() const noexcept { return hi_max_; }

private:
    std::uint64_t hi_max_;
    SieveConfig config_;
    std::vector<std::uint32_t> base_primes_;
    mutable std::vector<std::uint64_t> scratch_;
};

// Walks [lo, hi] in consecutive windows of at most `segment` integers. Each
// window handed to `fn` additionally covers `lookahead` integers past its
// nominal end (and past hi), so consumers can read f(n + k) for k <= lookahead.
// The second argument is the nominal last n of the window.
void sweep(std::uint64_t lo, std::uint64_t hi, std::uint64_t lookahead,
           const std::function<void(const FactorWindow&, std::uint64_t)>& fn,
           std::uint64_t segment = std::uint64_t{1} << 20);

// Odd part of n (n with all factors of two removed); 0 maps to 0.
constexpr std::uint64_t odd_part(std::uint64_t n) noexcept {
    return n == 0 ? 0 : n >> __builtin_ctzll(n);
}

}  // namespace erdoslab
