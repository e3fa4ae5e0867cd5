#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace erdoslab {

enum class BarrierKind { OMEGA_BARRIER, TAU_K_PLUS_2 };

std::string_view to_string(BarrierKind k);

struct BarrierReport {
    std::uint64_t x = 0;
    BarrierKind definition = BarrierKind::OMEGA_BARRIER;
    std::vector<std::uint64_t> barriers;
};

// n <= x with omega(n-k) <= k for all 1 <= k <= n-1. Equivalently
// max_{m<n} (m + omega(m)) <= n, tracked as a running maximum.
BarrierReport omega_barriers(std::uint64_t x);

// 24 < n <= x with tau(n-k) <= k+2 for all 1 <= k <= n-1, i.e.
// max_{m<n} (m + tau(m)) <= n + 2.
BarrierReport tau_k2_scan(std::uint64_t x);

// Direct check of the tau(n-k) <= k+2 property for a single n.
bool tau_k2_holds(std::uint64_t n);
// Direct check of the omega barrier property for a single n.
bool omega_barrier_holds(std::uint64_t n);

struct LinearProfile {
    double best_C = 0;
    std::uint64_t argmin_n = 0;
    // best_C as an exact fraction num/den.
    std::uint64_t num = 0;
    std::uint64_t den = 1;
};

// min over 1 <= n <= x of max_{1<=k<=K} Omega(n+k)/k, with the smallest
// minimizing n as witness.
LinearProfile linear_profile(std::uint64_t x, std::uint64_t K);

}  // namespace erdoslab
