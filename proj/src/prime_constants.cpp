#include "erdoslab/prime_constants.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "erdoslab/primes.hpp"
#include "erdoslab/sieve.hpp"

namespace erdoslab {

namespace {

using boost::multiprecision::cpp_int;

constexpr std::array<std::string_view, 10> kConstantNames = {
    "B1", "B2", "B3", "B4", "B5", "B6", "INV_P_SQ", "INV_PM1_SQ", "CTAU_C1", "CTAU_C3"};
constexpr std::array<std::string_view, 3> kSeriesNames = {"OMEGA_HALVES", "ERDOS_BORWEIN",
                                                          "BIG_OMEGA_HALVES"};

struct PrimeSums {
    long double mertens = 0;    // sum log(1-1/p) + 1/p
    long double inv_p_pm1 = 0;  // sum 1/(p(p-1))
    long double inv_p_sq = 0;   // sum 1/p^2
    long double inv_pm1_sq = 0; // sum 1/(p-1)^2
    long double b4_term = 0;    // sum (2p-1)/(p(p-1)^2)
};

// Summed from the largest prime down so the small terms accumulate first.
PrimeSums prime_sums(std::span<const std::uint32_t> primes, std::uint64_t p_max) {
    PrimeSums s;
    for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
        if (*it > p_max) continue;
        const long double p = *it;
        const long double x = 1.0L / p;
        s.mertens += std::log1p(-x) + x;
        s.inv_p_pm1 += 1.0L / (p * (p - 1));
        s.inv_p_sq += x * x;
        s.inv_pm1_sq += 1.0L / ((p - 1) * (p - 1));
        s.b4_term += (2 * p - 1) / (p * (p - 1) * (p - 1));
    }
    return s;
}

double to_double(const cpp_int& v, unsigned frac_bits) {
    // Keep the top ~62 bits; the rest is below double precision.
    const unsigned msb = v == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(v));
    const int shift = static_cast<int>(msb) - 62;
    if (shift <= 0) {
        return std::ldexp(static_cast<double>(v.convert_to<std::uint64_t>()),
                          -static_cast<int>(frac_bits));
    }
    const cpp_int top = v >> shift;
    return std::ldexp(static_cast<double>(top.convert_to<std::uint64_t>()),
                      shift - static_cast<int>(frac_bits));
}

// floor(2^bits / (2^m - 1))
cpp_int scaled_reciprocal(unsigned bits, std::uint64_t m) {
    cpp_int one = 1;
    return (one << bits) / ((one << static_cast<unsigned>(m)) - 1);
}

bool is_prime_power(std::uint64_t m) {
    if (m < 2) return false;
    const auto f = factor(m);
    return f.factors.size() == 1;
}

double identity_gap(std::uint64_t N, unsigned (*weight)(const Factorization&),
                    bool (*lambert_term)(std::uint64_t)) {
    if (N < 50) throw std::invalid_argument("series identity check needs N >= 50");
    const unsigned bits = static_cast<unsigned>(N) + 64;
    cpp_int lhs = 0;
    cpp_int rhs = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const unsigned w = weight(factor(n));
        if (w) lhs += cpp_int(w) << static_cast<unsigned>(bits - n);
        if (lambert_term(n)) rhs += scaled_reciprocal(bits, n);
    }
    const cpp_int diff = lhs > rhs ? cpp_int(lhs - rhs) : cpp_int(rhs - lhs);
    return to_double(diff, bits);
}

}  // namespace

std::string_view to_string(ConstantKind kind) {
    return kConstantNames.at(static_cast<std::size_t>(kind));
}

std::string_view to_string(SeriesKind kind) {
    return kSeriesNames.at(static_cast<std::size_t>(kind));
}

std::optional<ConstantKind> parse_constant_kind(std::string_view name) {
    for (std::size_t i = 0; i < kConstantNames.size(); ++i) {
        if (kConstantNames[i] == name) return static_cast<ConstantKind>(i);
    }
    return std::nullopt;
}

std::optional<SeriesKind> parse_series_kind(std::string_view name) {
    for (std::size_t i = 0; i < kSeriesNames.size(); ++i) {
        if (kSeriesNames[i] == name) return static_cast<SeriesKind>(i);
    }
    return std::nullopt;
}

// Each odd m > P satisfies g(m) <= (1/2) int_{m-2}^{m} g for decreasing g,
// and those intervals tile [P-1, inf).
double tail_inv_p_sq(std::uint64_t P) {
    return 1.0 / (2.0 * static_cast<double>(P - 1));
}

double tail_inv_pm1_sq(std::uint64_t P) {
    return 1.0 / (2.0 * static_cast<double>(P - 2));
}

PrimeSumResult constant(ConstantKind kind, std::uint64_t p_max) {
    if (p_max < 1000) throw std::invalid_argument("constant: p_max must be >= 1000");
    const auto primes = primes_up_to(p_max);
    return constant(kind, primes, p_max);
}

PrimeSumResult constant(ConstantKind kind, std::span<const std::uint32_t> primes,
                        std::uint64_t p_max) {
    if (p_max < 1000) throw std::invalid_argument("constant: p_max must be >= 1000");
    const PrimeSums s = prime_sums(primes, p_max);
    const double t_sq = tail_inv_p_sq(p_max);
    const double t_pm1 = tail_inv_pm1_sq(p_max);
    // |log(1-1/p) + 1/p| <= 1/(2p(p-1)) <= 1/(2(p-1)^2)
    const double t_b1 = 0.5 * t_pm1;

    const long double b1 = kEulerGamma + s.mertens;
    const long double b3 = b1 - kZeta2 - s.inv_p_sq;
    const long double b4 = b1 - kZeta2 + s.b4_term;

    PrimeSumResult r;
    r.kind = kind;
    r.p_max = p_max;
    switch (kind) {
        case ConstantKind::B1:
            r.value = static_cast<double>(b1);
            r.tail_bound = t_b1;
            break;
        case ConstantKind::B2:
            r.value = static_cast<double>(b1 + s.inv_p_pm1);
            r.tail_bound = t_b1 + t_pm1;
            break;
        case ConstantKind::B3:
            r.value = static_cast<double>(b3);
            r.tail_bound = t_b1 + t_sq;
            break;
        case ConstantKind::B4:
            // (2p-1)/(p(p-1)^2) <= 2/(p-1)^2
            r.value = static_cast<double>(b4);
            r.tail_bound = t_b1 + 2 * t_pm1;
            break;
        case ConstantKind::B5:
            // The 1/p^2 sums cancel exactly, leaving only the B1 tail.
            r.value = static_cast<double>(b3 + s.inv_p_sq);
            r.tail_bound = t_b1;
            break;
        case ConstantKind::B6:
            r.value = static_cast<double>(b4 + s.inv_pm1_sq);
            r.tail_bound = t_b1 + 3 * t_pm1;
            break;
        case ConstantKind::INV_P_SQ:
            r.value = static_cast<double>(s.inv_p_sq);
            r.tail_bound = t_sq;
            break;
        case ConstantKind::INV_PM1_SQ:
            r.value = static_cast<double>(s.inv_pm1_sq);
            r.tail_bound = t_pm1;
            break;
        default:
            throw std::invalid_argument("constant: kind " + std::string(to_string(kind)) +
                                        " is not a prime sum");
    }
    return r;
}

std::vector<PrimeSumResult> all_constants(std::uint64_t p_max) {
    if (p_max < 1000) throw std::invalid_argument("constant: p_max must be >= 1000");
    const auto primes = primes_up_to(p_max);
    std::vector<PrimeSumResult> out;
    for (int k = 0; k <= static_cast<int>(ConstantKind::INV_PM1_SQ); ++k) {
        out.push_back(constant(static_cast<ConstantKind>(k), primes, p_max));
    }
    return out;
}

SeriesResult series(SeriesKind kind, std::uint64_t n_terms) {
    if (n_terms < 50) throw std::invalid_argument("series: n_terms must be >= 50");
    const unsigned bits = static_cast<unsigned>(n_terms) + 64;
    cpp_int acc = 0;
    for (std::uint64_t m = 2; m <= n_terms; ++m) {
        bool keep = false;
        switch (kind) {
            case SeriesKind::OMEGA_HALVES: keep = is_prime(m); break;
            case SeriesKind::ERDOS_BORWEIN: keep = true; break;
            case SeriesKind::BIG_OMEGA_HALVES: keep = is_prime_power(m); break;
        }
        if (keep) acc += scaled_reciprocal(bits, m);
    }
    if (kind == SeriesKind::ERDOS_BORWEIN) acc += scaled_reciprocal(bits, 1);

    SeriesResult r;
    r.kind = kind;
    r.n_terms = n_terms;
    r.value = to_double(acc, bits);
    // 1/(2^m - 1) <= 2^{1-m}, so the omitted terms sum to at most 2^{1-N};
    // floor rounding adds at most n_terms ulps of the fixed-point grid.
    r.tail_bound = std::ldexp(1.0, 1 - static_cast<int>(n_terms)) +
                   std::ldexp(static_cast<double>(n_terms), -static_cast<int>(bits));
    return r;
}

double check_series_identity(std::uint64_t N) {
    return identity_gap(
        N, [](const Factorization& f) { return f.omega(); },
        [](std::uint64_t m) { return is_prime(m); });
}

double check_tau_series_identity(std::uint64_t N) {
    return identity_gap(
        N, [](const Factorization& f) { return static_cast<unsigned>(f.tau()); },
        [](std::uint64_t) { return true; });
}

double check_big_omega_series_identity(std::uint64_t N) {
    return identity_gap(
        N, [](const Factorization& f) { return f.big_omega(); },
        [](std::uint64_t m) { return is_prime_power(m); });
}

}  // namespace erdoslab
