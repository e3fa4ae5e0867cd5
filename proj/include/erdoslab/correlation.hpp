#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erdoslab/sieve.hpp"

namespace erdoslab {

using cplx = std::complex<double>;

// Built-in 1-bounded multiplicative functions.
//   ONE                    g(n) = 1
//   LIOUVILLE              (-1)^Omega(n)
//   MOEBIUS                mu(n)
//   EXP_ALPHA_BIG_OMEGA    e(alpha Omega(n)), e(t) = exp(2 pi i t)
//   EXP_ALPHA_OMEGA        e(alpha omega(n))
//   SMOOTH_BAND_INDICATOR  1 if no prime factor lies in [band_lo, band_hi], else 0
struct MultiplicativeFn {
    enum class Tag { ONE, LIOUVILLE, MOEBIUS, EXP_ALPHA_BIG_OMEGA, EXP_ALPHA_OMEGA, SMOOTH_BAND_INDICATOR };

    Tag tag = Tag::ONE;
    double alpha = 0;
    std::uint64_t band_lo = 0;
    std::uint64_t band_hi = 0;

    static MultiplicativeFn one() { return {}; }
    static MultiplicativeFn liouville() { return {Tag::LIOUVILLE}; }
    static MultiplicativeFn moebius() { return {Tag::MOEBIUS}; }
    static MultiplicativeFn exp_big_omega(double a) { return {Tag::EXP_ALPHA_BIG_OMEGA, a}; }
    static MultiplicativeFn exp_omega(double a) { return {Tag::EXP_ALPHA_OMEGA, a}; }
    static MultiplicativeFn band_indicator(std::uint64_t lo, std::uint64_t hi) {
        return {Tag::SMOOTH_BAND_INDICATOR, 0, lo, hi};
    }

    bool is_real() const noexcept;
    cplx at_prime(std::uint64_t p) const;
    // Value from an explicit factorization (slow path, used as an oracle).
    cplx at(const Factorization& f) const;
    std::string name() const;
};

// Parses "one", "liouville", "moebius", "exp_bigomega:<alpha>",
// "exp_omega:<alpha>", "band:<lo>:<hi>".
std::optional<MultiplicativeFn> parse_multiplicative_fn(std::string_view text);

// g(n) for n in [lo, hi], indexed by n - lo.
std::vector<cplx> evaluate(const MultiplicativeFn& g, std::uint64_t lo, std::uint64_t hi);

// A Dirichlet character mod q, stored as its values on 0..q-1.
struct DirichletCharacter {
    std::uint64_t q = 1;
    std::vector<cplx> values;
    bool principal = true;

    cplx operator()(std::uint64_t n) const { return values[n % q]; }
};

// All phi(q) characters mod q, principal first. Built by extending the
// character group one generator at a time with exact integer phases.
std::vector<DirichletCharacter> dirichlet_characters(std::uint64_t q);

// D(f, g n^{it}; X) = sqrt(sum_{p <= X} (1 - Re(f(p) conj(g(p)) p^{-it})) / p).
double pretentious_distance(const MultiplicativeFn& f, const MultiplicativeFn& g, std::uint64_t X,
                            double t = 0);

// Nested t-grid on [-X, X]: t = 0 first, then +-t_min (X/t_min)^{s_k} with
// s_k the base-2 van der Corput sequence, so a larger grid contains a smaller one.
std::vector<double> t_grid(std::uint64_t X, std::size_t size);

struct MMeasure {
    double value = 0;           // min of D^2 over the grid and characters
    double t = 0;
    std::uint64_t q = 1;
    std::size_t character = 0;  // index into dirichlet_characters(q)
    // sum_{p<=X} log p / p bounds |d D^2/dt|; times the largest distance from
    // any t in [-X, X] to the grid this caps how far the grid minimum can sit
    // above the true infimum.
    double grid_error_cap = 0;
};

inline constexpr std::uint64_t kMaxCharacterModulus = 100;

MMeasure m_measure(const MultiplicativeFn& g, std::uint64_t X, std::size_t t_grid_size,
                   std::uint64_t Q);

struct CorrelationQuery {
    std::uint64_t N = 1000;
    std::uint64_t W = 1;
    std::uint64_t b = 1;
    std::int64_t h1 = 0;
    std::int64_t h2 = 1;
    double delta_N = 0;
};

// (W/N) sum_{N < n <= 2N, n = b mod W} (g1(n+h1) - delta_N) g2(n+h2).
cplx two_point_correlation(const MultiplicativeFn& g1, const MultiplicativeFn& g2,
                           const CorrelationQuery& q);

// max over q <= q_max and residues a mod q of
// |sum_{N < n <= 2N, n = a mod q} g1(n) - (N/q) delta_N| / N.
double equidist_defect(const MultiplicativeFn& g1, std::uint64_t N, double delta_N,
                       std::uint64_t q_max);

}  // namespace erdoslab
