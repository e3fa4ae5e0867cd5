#include "erdoslab/ctau.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "erdoslab/primes.hpp"
#include "erdoslab/scan.hpp"

namespace erdoslab {

namespace {

constexpr unsigned kShards = 64;

std::vector<std::uint64_t> shard_seeds(std::uint64_t seed) {
    std::vector<std::uint64_t> out(kShards);
    std::uint64_t state = seed;
    for (auto& s : out) s = splitmix64(state);
    return out;
}

unsigned nu(std::uint64_t n, std::uint32_t q) {
    unsigned e = 0;
    while (n % q == 0) {
        n /= q;
        ++e;
    }
    return e;
}

bool is_pow2(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

bool is_3pow2(std::uint64_t n) { return n % 3 == 0 && is_pow2(n / 3); }

// one_sample(rng) returns a bitmask of events; bit e is counted into hits[e].
template <class Sample>
std::array<std::uint64_t, 4> run_shards(std::uint64_t samples, std::uint64_t seed, unsigned threads,
                                        const Sample& one_sample) {
    const auto seeds = shard_seeds(seed);
    std::vector<std::array<std::uint64_t, 4>> hits(kShards, {0, 0, 0, 0});
    auto work = [&](unsigned first, unsigned stride) {
        for (unsigned s = first; s < kShards; s += stride) {
            const std::uint64_t n = samples / kShards + (s < samples % kShards ? 1 : 0);
            Rng rng(seeds[s]);
            std::array<std::uint64_t, 4> h{0, 0, 0, 0};
            for (std::uint64_t k = 0; k < n; ++k) {
                const unsigned mask = one_sample(rng);
                for (unsigned e = 0; e < 4; ++e) h[e] += (mask >> e) & 1u;
            }
            hits[s] = h;
        }
    };
    threads = std::clamp(threads, 1u, kShards);
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto& th : pool) th.join();
    }
    std::array<std::uint64_t, 4> total{0, 0, 0, 0};
    for (const auto& h : hits) {
        for (unsigned e = 0; e < 4; ++e) total[e] += h[e];
    }
    return total;
}

// Bit 0: pow2 ratio; bits 1..3: nu_q match for q in {3}, {3,5}, {3,5,7}.
unsigned event_mask(std::span<const PairSample> draws) {
    unsigned mask = ratio_is_power_of_two(draws) ? 1u : 0u;
    int d3 = 0, d5 = 0, d7 = 0;
    for (const auto& d : draws) {
        const std::uint64_t a = std::uint64_t{d.a1} + 1;
        const std::uint64_t b = std::uint64_t{d.a0} + 1;
        d3 += static_cast<int>(nu(a, 3)) - static_cast<int>(nu(b, 3));
        d5 += static_cast<int>(nu(a, 5)) - static_cast<int>(nu(b, 5));
        d7 += static_cast<int>(nu(a, 7)) - static_cast<int>(nu(b, 7));
    }
    if (d3 == 0) mask |= 2u;
    if (d3 == 0 && d5 == 0) mask |= 4u;
    if (d3 == 0 && d5 == 0 && d7 == 0) mask |= 8u;
    return mask;
}

CtauEstimate make_estimate(std::uint64_t p_max, std::uint64_t samples, std::uint64_t seed,
                           std::uint64_t hits) {
    CtauEstimate e;
    e.p_max = p_max;
    e.samples = samples;
    e.seed = seed;
    e.point = static_cast<double>(hits) / static_cast<double>(samples);
    e.mc_stderr = std::sqrt(e.point * (1 - e.point) / static_cast<double>(samples));
    e.tail_bound = 2 * tail_inv_p_sq(p_max);
    return e;
}

void check_mc_args(std::uint64_t p_max, std::uint64_t samples) {
    if (p_max < 1000) throw std::invalid_argument("ctau_monte_carlo: p_max must be >= 1000");
    if (samples < 10000) throw std::invalid_argument("ctau_monte_carlo: samples must be >= 1e4");
}

}  // namespace

PairSampler::PairSampler(std::uint32_t p) : p_(p) {
    if (p < 2) throw std::invalid_argument("PairSampler: p must be >= 2");
    const std::uint64_t half = ~std::uint64_t{0} / p + (p == 2 ? 1 : 0);
    zero_threshold_ = p == 2 ? 0 : 0 - 2 * half;
    // Largest j with (1 - 1/p) / p^j >= 2^-64.
    const long double lead = 1.0L - 1.0L / p;
    j_cap_ = 1;
    long double mass = lead / p;
    while (mass / p * 0x1p64L >= 1.0L) {
        mass /= p;
        ++j_cap_;
    }
}

PairSample PairSampler::from_uniform(std::uint64_t u) const {
    PairSample s;
    s.p = p_;
    if (u < zero_threshold_) return s;
    const std::uint64_t span = 0 - zero_threshold_;  // 2 * floor(2^64 / p), or 2^64 at p = 2
    const std::uint64_t half = span == 0 ? std::uint64_t{1} << 63 : span / 2;
    const std::uint64_t rest = u - zero_threshold_;
    const bool upper = rest < half;
    const long double w = static_cast<long double>(upper ? rest : rest - half) / half;
    // P(j) = (1 - 1/p) p^{1-j}: smallest j with w < 1 - p^{-j}.
    long double tail = 1.0L / p_;
    std::uint32_t j = 1;
    while (w >= 1.0L - tail && j < j_cap_) {
        tail /= p_;
        ++j;
    }
    if (upper) {
        s.a1 = j;
    } else {
        s.a0 = j;
    }
    return s;
}

PairSample sample_pair(std::uint32_t p, Rng& rng) { return PairSampler(p)(rng); }

bool ratio_is_power_of_two(std::span<const PairSample> draws) {
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (std::size_t k = 0; k < draws.size(); ++k) {
        const std::uint64_t a = odd_part(std::uint64_t{draws[k].a1} + 1);
        const std::uint64_t b = odd_part(std::uint64_t{draws[k].a0} + 1);
        std::uint64_t nn = 0;
        std::uint64_t dd = 0;
        if (__builtin_mul_overflow(num, a, &nn) || __builtin_mul_overflow(den, b, &dd)) {
            using boost::multiprecision::cpp_int;
            cpp_int bn = num;
            cpp_int bd = den;
            for (std::size_t r = k; r < draws.size(); ++r) {
                bn *= odd_part(std::uint64_t{draws[r].a1} + 1);
                bd *= odd_part(std::uint64_t{draws[r].a0} + 1);
            }
            return bn == bd;
        }
        const std::uint64_t g = std::gcd(nn, dd);
        num = nn / g;
        den = dd / g;
    }
    return num == den;
}

CtauModelEvents ctau_monte_carlo_events(std::uint64_t p_max, std::uint64_t samples,
                                        std::uint64_t seed, unsigned threads) {
    check_mc_args(p_max, samples);
    std::vector<PairSampler> samplers;
    for (const auto p : primes_up_to(p_max)) samplers.emplace_back(p);

    const auto hits = run_shards(samples, seed, threads, [&](Rng& rng) {
        std::vector<PairSample> draws;
        draws.reserve(32);
        for (const auto& s : samplers) {
            const std::uint64_t u = rng();
            if (u < s.zero_threshold()) continue;
            draws.push_back(s.from_uniform(u));
        }
        return event_mask(draws);
    });
    CtauModelEvents ev;
    ev.pow2 = make_estimate(p_max, samples, seed, hits[0]);
    ev.nu3 = make_estimate(p_max, samples, seed, hits[1]);
    ev.nu35 = make_estimate(p_max, samples, seed, hits[2]);
    ev.nu357 = make_estimate(p_max, samples, seed, hits[3]);
    return ev;
}

CtauEstimate ctau_monte_carlo(std::uint64_t p_max, std::uint64_t samples, std::uint64_t seed,
                              unsigned threads) {
    return ctau_monte_carlo_events(p_max, samples, seed, threads).pow2;
}

CtauEstimate ctau_monte_carlo(std::uint64_t p_max, std::uint64_t samples, std::uint64_t seed,
                              const PairDraw& draw, unsigned threads) {
    check_mc_args(p_max, samples);
    const auto primes = primes_up_to(p_max);
    const auto hits = run_shards(samples, seed, threads, [&](Rng& rng) {
        std::vector<PairSample> draws;
        for (const auto p : primes) {
            const PairSample d = draw(p, rng);
            if (d.a0 || d.a1) draws.push_back(d);
        }
        return event_mask(draws);
    });
    return make_estimate(p_max, samples, seed, hits[0]);
}

long double ctau_c1_factor(std::uint32_t p) {
    const long double pp = p;
    long double f = 1.0L - 2.0L / (pp * pp);
    for (unsigned j = 2; j < 64; ++j) {
        const long double e = std::ldexp(1.0L, static_cast<int>(j));  // 2^j
        const long double term = 2.0L * std::pow(pp, -(e - 1)) - 2.0L * std::pow(pp, -e);
        f += term;
        if (std::fabs(term) < 1e-30L) break;
    }
    return f;
}

long double ctau_c3_ratio(std::uint32_t p) {
    const long double pp = p;
    long double num = 0;
    for (unsigned j = 0; j < 64; ++j) {
        const long double e = 3.0L * std::ldexp(1.0L, static_cast<int>(j));  // 3 * 2^j
        const long double term = std::pow(pp, -(e - 1)) - std::pow(pp, -e);
        num += term;
        if (term < 1e-30L) break;
    }
    return num / ctau_c1_factor(p);
}

PrimeSumResult ctau_lower_c1(std::uint64_t p_max) {
    if (p_max < 1000) throw std::invalid_argument("ctau_lower_c1: p_max must be >= 1000");
    long double prod = 1;
    for (const auto p : primes_up_to(p_max)) prod *= ctau_c1_factor(p);
    PrimeSumResult r;
    r.kind = ConstantKind::CTAU_C1;
    r.p_max = p_max;
    r.value = static_cast<double>(prod);
    // Every omitted factor lies in [1 - 2/p^2, 1].
    r.tail_bound = r.value * 2 * tail_inv_p_sq(p_max);
    return r;
}

PrimeSumResult ctau_lower_c3(std::uint64_t p_max) {
    if (p_max < 1000) throw std::invalid_argument("ctau_lower_c3: p_max must be >= 1000");
    const auto primes = primes_up_to(p_max);
    long double prod = 1;
    long double sum = 0;
    long double sum_sq = 0;
    for (const auto p : primes) {
        prod *= ctau_c1_factor(p);
        const long double r = ctau_c3_ratio(p);
        sum += r;
        sum_sq += r * r;
    }
    // Ordered pairs p0 != p1: (sum r)^2 - sum r^2.
    const long double pairs = sum * sum - sum_sq;
    PrimeSumResult out;
    out.kind = ConstantKind::CTAU_C3;
    out.p_max = p_max;
    out.value = static_cast<double>(prod * pairs);
    // r_p <= 2/p^2 (numerator <= 1/p^2, c1 factor >= 1/2), so the omitted
    // ratios sum to at most 2T; pairs touching them add at most 2 * S * 2T.
    const long double t = tail_inv_p_sq(p_max);
    const long double pair_tail = 4 * t * (sum + 2 * t);
    out.tail_bound = static_cast<double>(prod * pair_tail + out.value * 2 * t);
    return out;
}

double ctau_empirical(std::uint64_t x) {
    if (x < 1000) throw std::invalid_argument("ctau_empirical: x must be >= 1000");
    std::uint64_t hits = 0;
    for_each_n(1, x, 1, [&](const FactorWindow& w, std::size_t i) {
        hits += is_pow2_ratio(w.tau[i], w.tau[i + 1]) ? 1 : 0;
    });
    return static_cast<double>(hits) / static_cast<double>(x);
}

double nu_match_upper(std::uint64_t x, std::span<const std::uint32_t> odd_primes) {
    if (x < 1000) throw std::invalid_argument("nu_match_upper: x must be >= 1000");
    for (const auto q : odd_primes) {
        if (q < 3 || !is_prime(q)) throw std::invalid_argument("nu_match_upper: need odd primes");
    }
    std::uint64_t hits = 0;
    for_each_n(1, x, 1, [&](const FactorWindow& w, std::size_t i) {
        const bool all = std::all_of(odd_primes.begin(), odd_primes.end(), [&](std::uint32_t q) {
            return nu(w.tau[i], q) == nu(w.tau[i + 1], q);
        });
        hits += all ? 1 : 0;
    });
    return static_cast<double>(hits) / static_cast<double>(x);
}

std::vector<TauPairCounts> tau_pair_scan(std::span<const std::uint64_t> grid) {
    if (grid.empty()) return {};
    if (!std::is_sorted(grid.begin(), grid.end()) || grid.front() < 1) {
        throw std::invalid_argument("tau_pair_scan: grid must be ascending and positive");
    }
    std::vector<TauPairCounts> out;
    TauPairCounts c;
    std::size_t next = 0;
    for_each_n(1, grid.back(), 1, [&](const FactorWindow& w, std::size_t i) {
        const std::uint64_t t0 = w.tau[i];
        const std::uint64_t t1 = w.tau[i + 1];
        c.pow2_ratio += is_pow2_ratio(t0, t1);
        const bool m3 = nu(t0, 3) == nu(t1, 3);
        const bool m5 = m3 && nu(t0, 5) == nu(t1, 5);
        c.nu3 += m3;
        c.nu35 += m5;
        c.nu357 += m5 && nu(t0, 7) == nu(t1, 7);
        const bool p2 = is_pow2(t0) && is_pow2(t1);
        c.both_pow2 += p2;
        c.both_pow2_or_3pow2 += p2 || (is_3pow2(t0) && is_3pow2(t1));
        const std::uint64_t n = w.lo + i;
        while (next < grid.size() && grid[next] == n) {
            c.x = n;
            out.push_back(c);
            ++next;
        }
    });
    return out;
}

}  // namespace erdoslab
