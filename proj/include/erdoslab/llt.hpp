#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace erdoslab {

// Finitely supported distribution on the integers offset, offset+1, ...
// Mass removed by truncation is kept in truncated_mass, so that
// sum(mass) + truncated_mass == 1 up to rounding.
struct IntegerPMF {
    std::int64_t offset = 0;
    std::vector<double> mass;
    double truncated_mass = 0;

    std::int64_t min_support() const noexcept { return offset; }
    std::int64_t max_support() const noexcept {
        return offset + static_cast<std::int64_t>(mass.size()) - 1;
    }
    double at(std::int64_t m) const noexcept;
    double total() const noexcept;
    double mean() const noexcept;
    double variance() const noexcept;
};

enum class BpVariant { BIG_OMEGA, SMALL_OMEGA };

std::string_view to_string(BpVariant v);

// Distribution of b_p = nu_p(n+1) - nu_p(n) in the independent prime model.
// BIG_OMEGA: P(0) = 1 - 2/p, P(+-j) = (1 - 1/p)/p^j.
// SMALL_OMEGA: P(0) = 1 - 2/p, P(+-1) = 1/p.
IntegerPMF bp_pmf(std::uint32_t p, BpVariant variant, unsigned j_max);

// Exact variance of b_p (no truncation).
double bp_variance(std::uint32_t p, BpVariant variant);

// Direct convolution; the result's truncated_mass combines both inputs'.
IntegerPMF convolve(const IntegerPMF& a, const IntegerPMF& b);

struct SumPmfOptions {
    // Total mass that may be clipped from the tails over the whole convolution.
    double clip_budget = 1e-10;
    // Per-prime exponents are kept while their mass is at least this.
    double min_atom = 1e-22;
    // Largest z accepted; prime tables above this are rejected up front.
    std::uint64_t z_budget = 2'000'000'000;
    // Explicit exponent cap for BIG_OMEGA (0 = derive from min_atom).
    unsigned j_max = 0;
};

// Distribution of sum_{w < p <= z} b_p by exact convolution in ascending p.
IntegerPMF sum_pmf(double w, double z, BpVariant variant, const SumPmfOptions& opts = {});

// e^{-m^2/(4L)} / (2 sqrt(pi L))
double gaussian_local(std::int64_t m, double L);

struct LltDeviation {
    double deviation = 0;  // sup_m |pmf(m) - gaussian_local(m, L)|
    double L = 0;
    double peak = 0;       // 1 / (2 sqrt(pi L))
    std::int64_t argmax = 0;
};

enum class LltScale { EXACT_VARIANCE, LOGLOG };

// With EXACT_VARIANCE, L is half the variance of the convolved pmf; LOGLOG
// uses L = log log z instead.
LltDeviation llt_deviation(const IntegerPMF& pmf, double z, LltScale scale = LltScale::EXACT_VARIANCE);
LltDeviation llt_deviation(double w, double z, BpVariant variant,
                           LltScale scale = LltScale::EXACT_VARIANCE,
                           const SumPmfOptions& opts = {});

}  // namespace erdoslab
