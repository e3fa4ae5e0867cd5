#include "erdoslab/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace erdoslab {

namespace {

constexpr std::uint64_t kSegment = 1u << 18;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
    return primes_in_range(0, limit);
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint32_t)>& fn) {
    if (hi > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("prime tables are limited to 32-bit primes");
    }
    if (hi < 2 || hi <= lo) return;

    const std::uint64_t root = isqrt(hi);
    std::vector<std::uint32_t> base;
    {
        std::vector<bool> composite(root + 1, false);
        for (std::uint64_t i = 2; i <= root; ++i) {
            if (composite[i]) continue;
            base.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= root; j += i) composite[j] = true;
        }
    }

    std::vector<std::uint8_t> marks(kSegment);
    for (std::uint64_t start = std::max<std::uint64_t>(lo + 1, 2); start <= hi; start += kSegment) {
        const std::uint64_t stop = std::min(hi, start + kSegment - 1);
        const std::size_t len = stop - start + 1;
        std::fill(marks.begin(), marks.begin() + len, 0);
        for (const std::uint32_t p : base) {
            const std::uint64_t pp = std::uint64_t{p} * p;
            if (pp > stop) break;
            std::uint64_t m = std::max(pp, (start + p - 1) / p * p);
            for (; m <= stop; m += p) marks[m - start] = 1;
        }
        for (std::size_t i = 0; i < len; ++i) {
            if (!marks[i]) fn(static_cast<std::uint32_t>(start + i));
        }
    }
}

std::vector<std::uint32_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint32_t> out;
    if (hi > 1000) {
        const double est = hi / (std::log(static_cast<double>(hi)) - 1.1);
        out.reserve(static_cast<std::size_t>(est));
    }
    for_each_prime(lo, hi, [&](std::uint32_t p) { out.push_back(p); });
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace erdoslab
