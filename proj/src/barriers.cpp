#include "erdoslab/barriers.hpp"

#include <algorithm>
#include <stdexcept>

#include "erdoslab/scan.hpp"

namespace erdoslab {

std::string_view to_string(BarrierKind k) {
    return k == BarrierKind::OMEGA_BARRIER ? "OMEGA_BARRIER" : "TAU_K_PLUS_2";
}

BarrierReport omega_barriers(std::uint64_t x) {
    if (x < 2) throw std::invalid_argument("omega_barriers: x must be >= 2");
    BarrierReport r;
    r.x = x;
    r.definition = BarrierKind::OMEGA_BARRIER;
    std::uint64_t reach = 0;  // max over m < n of m + omega(m)
    for_each_n(1, x, 0, [&](const FactorWindow& w, std::size_t i) {
        const std::uint64_t n = w.lo + i;
        if (reach <= n) r.barriers.push_back(n);
        reach = std::max<std::uint64_t>(reach, n + w.omega[i]);
    });
    return r;
}

BarrierReport tau_k2_scan(std::uint64_t x) {
    if (x < 25) throw std::invalid_argument("tau_k2_scan: x must be >= 25");
    BarrierReport r;
    r.x = x;
    r.definition = BarrierKind::TAU_K_PLUS_2;
    std::uint64_t reach = 0;  // max over m < n of m + tau(m)
    for_each_n(1, x, 0, [&](const FactorWindow& w, std::size_t i) {
        const std::uint64_t n = w.lo + i;
        if (n > 24 && reach <= n + 2) r.barriers.push_back(n);
        reach = std::max<std::uint64_t>(reach, n + w.tau[i]);
    });
    return r;
}

bool tau_k2_holds(std::uint64_t n) {
    if (n < 2) return true;
    const FactorWindow w = sieve_window(1, n - 1);
    for (std::uint64_t k = 1; k < n; ++k) {
        if (w.tau[w.index(n - k)] > k + 2) return false;
    }
    return true;
}

bool omega_barrier_holds(std::uint64_t n) {
    if (n < 2) return true;
    const FactorWindow w = sieve_window(1, n - 1);
    for (std::uint64_t k = 1; k < n; ++k) {
        if (w.omega[w.index(n - k)] > k) return false;
    }
    return true;
}

LinearProfile linear_profile(std::uint64_t x, std::uint64_t K) {
    if (x < 1) throw std::invalid_argument("linear_profile: x must be >= 1");
    if (K < 2) throw std::invalid_argument("linear_profile: K must be >= 2");
    LinearProfile best;
    bool have = false;
    for_each_n(1, x, K, [&](const FactorWindow& w, std::size_t i) {
        // Exact max of Omega(n+k)/k as a fraction.
        std::uint64_t num = 0, den = 1;
        for (std::uint64_t k = 1; k <= K; ++k) {
            const std::uint64_t v = w.big_omega[i + k];
            if (v * den > num * k) {
                num = v;
                den = k;
            }
        }
        if (!have || num * best.den < best.num * den) {
            have = true;
            best.num = num;
            best.den = den;
            best.argmin_n = w.lo + i;
        }
    });
    best.best_C = static_cast<double>(best.num) / static_cast<double>(best.den);
    return best;
}

}  // namespace erdoslab
