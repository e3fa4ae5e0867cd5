#include "erdoslab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "erdoslab/errors.hpp"
#include "erdoslab/primes.hpp"

namespace erdoslab {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

std::size_t FactorWindow::index(std::uint64_t n) const {
    if (!contains(n)) {
        throw std::out_of_range("n = " + std::to_string(n) + " outside window [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return static_cast<std::size_t>(n - lo);
}

unsigned Factorization::valuation(std::uint64_t p) const noexcept {
    for (const auto& [q, e] : factors) {
        if (q == p) return e;
    }
    return 0;
}

unsigned Factorization::big_omega() const noexcept {
    unsigned s = 0;
    for (const auto& f : factors) s += f.second;
    return s;
}

std::uint64_t Factorization::tau() const noexcept {
    std::uint64_t t = 1;
    for (const auto& f : factors) t *= f.second + 1;
    return t;
}

std::uint64_t Factorization::largest_prime() const noexcept {
    return factors.empty() ? 1 : factors.back().first;
}

bool Factorization::squarefree() const noexcept {
    return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.second == 1; });
}

Factorization factor(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor: n must be >= 1");
    Factorization out;
    out.n = n;
    auto peel = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.factors.emplace_back(p, e);
    };
    peel(2);
    peel(3);
    for (std::uint64_t d = 5; d <= n / d; d += 6) {
        peel(d);
        peel(d + 2);
    }
    if (n > 1) out.factors.emplace_back(n, 1);
    return out;
}

bool is_smooth(const FactorWindow& w, std::uint64_t n, double y) {
    if (y < 2) throw std::invalid_argument("is_smooth: y must be >= 2");
    return static_cast<long double>(w.lpf[w.index(n)]) <= static_cast<long double>(y);
}

WindowSieve::WindowSieve(std::uint64_t hi_max, SieveConfig config)
    : hi_max_(hi_max), config_(config), base_primes_(primes_up_to(isqrt(hi_max))) {}

FactorWindow WindowSieve::window(std::uint64_t lo, std::uint64_t hi) const {
    FactorWindow w;
    window_into(lo, hi, w);
    return w;
}

void WindowSieve::window_into(std::uint64_t lo, std::uint64_t hi, FactorWindow& w) const {
    if (lo < 1 || hi < lo) {
        throw std::invalid_argument("sieve_window: need 1 <= lo <= hi, got [" + std::to_string(lo) +
                                    ", " + std::to_string(hi) + "]");
    }
    if (hi > hi_max_) {
        throw std::invalid_argument("sieve_window: hi exceeds the sieve's hi_max");
    }
    const std::uint64_t len = hi - lo + 1;
    if (len > config_.max_window) {
        throw BudgetError("sieve_window: window too large", len, config_.max_window);
    }

    const auto n = static_cast<std::size_t>(len);
    w.lo = lo;
    w.hi = hi;
    w.omega.assign(n, 0);
    w.big_omega.assign(n, 0);
    w.tau.assign(n, 1);
    w.lpf.assign(n, 1);
    auto& rem = scratch_;
    rem.resize(n);
    for (std::size_t i = 0; i < n; ++i) rem[i] = lo + i;

    // Powers of two via ctz.
    for (std::uint64_t m = lo + (lo & 1); m <= hi; m += 2) {
        const std::size_t i = m - lo;
        const unsigned e = static_cast<unsigned>(__builtin_ctzll(rem[i]));
        rem[i] >>= e;
        w.omega[i] = 1;
        w.big_omega[i] = static_cast<std::uint8_t>(e);
        w.tau[i] = e + 1;
        w.lpf[i] = 2;
    }

    for (const std::uint32_t p32 : base_primes_) {
        const std::uint64_t p = p32;
        if (p == 2) continue;
        if (p * p > hi) break;
        for (std::uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
            const std::size_t i = m - lo;
            std::uint64_t r = rem[i] / p;
            unsigned e = 1;
            while (r % p == 0) {
                r /= p;
                ++e;
            }
            rem[i] = r;
            w.omega[i] += 1;
            w.big_omega[i] = static_cast<std::uint8_t>(w.big_omega[i] + e);
            w.tau[i] *= e + 1;
            w.lpf[i] = p;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (rem[i] > 1) {
            w.omega[i] += 1;
            w.big_omega[i] += 1;
            w.tau[i] *= 2;
            w.lpf[i] = rem[i];
        }
    }
}

FactorWindow sieve_window(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
    if (lo < 1 || hi < lo) {
        throw std::invalid_argument("sieve_window: need 1 <= lo <= hi, got [" + std::to_string(lo) +
                                    ", " + std::to_string(hi) + "]");
    }
    if (hi - lo + 1 > config.max_window) {
        throw BudgetError("sieve_window: window too large", hi - lo + 1, config.max_window);
    }
    return WindowSieve(hi, config).window(lo, hi);
}

void sweep(std::uint64_t lo, std::uint64_t hi, std::uint64_t lookahead,
           const std::function<void(const FactorWindow&, std::uint64_t)>& fn,
           std::uint64_t segment) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("sweep: need 1 <= lo <= hi");
    if (segment == 0) throw std::invalid_argument("sweep: segment must be positive");
    SieveConfig cfg;
    cfg.max_window = std::max(cfg.max_window, segment + lookahead);
    const WindowSieve sieve(hi + lookahead, cfg);
    FactorWindow w;
    for (std::uint64_t a = lo; a <= hi; a += segment) {
        const std::uint64_t b = std::min(hi, a + segment - 1);
        sieve.window_into(a, b + lookahead, w);
        fn(w, b);
        if (b == hi) break;
    }
}

}  // namespace erdoslab
