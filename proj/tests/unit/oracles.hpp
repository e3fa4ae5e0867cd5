#pragma once

// Brute-force reference values. Nothing here touches the library's sieve or
// factorization code.

#include <cstdint>
#include <vector>

namespace oracle {

inline bool naive_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::uint64_t naive_tau(std::uint64_t n) {
    std::uint64_t t = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) t += (d * d == n) ? 1 : 2;
    }
    return t;
}

struct Counts {
    unsigned omega = 0;
    unsigned big_omega = 0;
    std::uint64_t lpf = 1;
    bool squarefree = true;
};

inline Counts naive_counts(std::uint64_t n) {
    Counts c;
    for (std::uint64_t d = 2; d <= n; ++d) {
        if (n % d != 0 || !naive_is_prime(d)) continue;
        unsigned e = 0;
        std::uint64_t m = n;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        ++c.omega;
        c.big_omega += e;
        c.lpf = d;
        if (e > 1) c.squarefree = false;
    }
    return c;
}

// Same as naive_counts but only scans divisors up to sqrt, for larger ranges.
inline Counts counts(std::uint64_t n) {
    Counts c;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        ++c.omega;
        c.big_omega += e;
        c.lpf = d;
        if (e > 1) c.squarefree = false;
    }
    if (n > 1) {
        ++c.omega;
        ++c.big_omega;
        c.lpf = n;
    }
    return c;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        const auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace oracle
