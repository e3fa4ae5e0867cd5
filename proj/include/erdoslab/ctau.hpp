#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "erdoslab/prime_constants.hpp"
#include "erdoslab/rng.hpp"

namespace erdoslab {

// One draw of (nu_p(n), nu_p(n+1)) in the limiting model: (0,0), (0,j) or
// (j,0). At most one coordinate is nonzero.
struct PairSample {
    std::uint32_t p = 2;
    std::uint32_t a0 = 0;
    std::uint32_t a1 = 0;
};

struct CtauEstimate {
    double point = 0;
    double mc_stderr = 0;
    double tail_bound = 0;  // >= sum_{p > p_max} 2/p^2, mass of draws not simulated
    std::uint64_t p_max = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

using Rng = Xoshiro256;

// Inverse-CDF sampler for the pair model at a fixed prime. Every draw consumes
// exactly one 64-bit output of the generator.
class PairSampler {
public:
    explicit PairSampler(std::uint32_t p);

    PairSample operator()(Rng& rng) const { return from_uniform(rng()); }
    PairSample from_uniform(std::uint64_t u) const;

    std::uint32_t prime() const noexcept { return p_; }
    // Largest exponent ever produced; the mass above it is folded into it.
    std::uint32_t j_cap() const noexcept { return j_cap_; }
    // Draws below this threshold are (0,0).
    std::uint64_t zero_threshold() const noexcept { return zero_threshold_; }

private:
    std::uint32_t p_;
    std::uint32_t j_cap_;
    std::uint64_t zero_threshold_;
};

PairSample sample_pair(std::uint32_t p, Rng& rng);

// Odd parts of prod(1 + a1) and prod(1 + a0) agree, i.e. the model's
// divisor-count ratio is a power of two. Exact for any number of factors.
bool ratio_is_power_of_two(std::span<const PairSample> draws);

// tau ratio b/a is a power of two.
constexpr bool is_pow2_ratio(std::uint64_t a, std::uint64_t b) noexcept {
    return a != 0 && b != 0 && (a >> __builtin_ctzll(a)) == (b >> __builtin_ctzll(b));
}

// Test hook: replaces the per-prime draw. Receives the prime and the shard's generator.
using PairDraw = std::function<PairSample(std::uint32_t, Rng&)>;

// Fraction of model samples (all p <= p_max drawn independently) whose
// tau-ratio is a power of two. Work is split into a fixed number of shards
// with seeds derived from `seed`, so results do not depend on `threads`.
CtauEstimate ctau_monte_carlo(std::uint64_t p_max, std::uint64_t samples, std::uint64_t seed,
                              unsigned threads = 1);
CtauEstimate ctau_monte_carlo(std::uint64_t p_max, std::uint64_t samples, std::uint64_t seed,
                              const PairDraw& draw, unsigned threads = 1);

// The pow2-ratio event together with the larger nu_q-match events
// (q = 3; 3,5; 3,5,7), all evaluated on the same model samples.
struct CtauModelEvents {
    CtauEstimate pow2;
    CtauEstimate nu3;
    CtauEstimate nu35;
    CtauEstimate nu357;
};

CtauModelEvents ctau_monte_carlo_events(std::uint64_t p_max, std::uint64_t samples,
                                        std::uint64_t seed, unsigned threads = 1);

// Euler factor of the "both divisor counts are powers of two" product at p.
long double ctau_c1_factor(std::uint32_t p);
// Probability weight that nu_p(n) + 1 is three times a power of two, relative to the c1 factor.
long double ctau_c3_ratio(std::uint32_t p);

PrimeSumResult ctau_lower_c1(std::uint64_t p_max);
PrimeSumResult ctau_lower_c3(std::uint64_t p_max);

// Fraction of n <= x with tau(n+1)/tau(n) a power of two.
double ctau_empirical(std::uint64_t x);

// Fraction of n <= x with nu_q(tau(n)) == nu_q(tau(n+1)) for every q in `odd_primes`.
double nu_match_upper(std::uint64_t x, std::span<const std::uint32_t> odd_primes);

// Per-x counts behind the c_tau comparison figure, accumulated in one sweep.
struct TauPairCounts {
    std::uint64_t x = 0;
    std::uint64_t pow2_ratio = 0;
    std::uint64_t nu3 = 0;
    std::uint64_t nu35 = 0;
    std::uint64_t nu357 = 0;
    std::uint64_t both_pow2 = 0;
    std::uint64_t both_pow2_or_3pow2 = 0;
};

std::vector<TauPairCounts> tau_pair_scan(std::span<const std::uint64_t> grid);

}  // namespace erdoslab
