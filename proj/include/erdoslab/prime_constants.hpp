#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace erdoslab {

// Euler-Mascheroni constant and zeta(2), 30 significant digits (OEIS A001620, A013661).
inline constexpr long double kEulerGamma = 0.577215664901532860606512090082L;
inline constexpr long double kZeta2 = 1.64493406684822643647241516665L;

// Reference values used as defaults elsewhere; tests check them against constant().
inline constexpr double kMeisselMertens = 0.26149721284764278;           // B1
inline constexpr double kB5 = 0.26149721284764278 - 1.6449340668482264;  // B1 - zeta(2)
inline constexpr double kB6 = 2.1398498;

enum class ConstantKind { B1, B2, B3, B4, B5, B6, INV_P_SQ, INV_PM1_SQ, CTAU_C1, CTAU_C3 };

// A truncated prime sum or product. The untruncated value lies in
// [value - tail_bound, value + tail_bound].
struct PrimeSumResult {
    double value = 0;
    std::uint64_t p_max = 0;
    double tail_bound = 0;
    ConstantKind kind = ConstantKind::B1;
};

enum class SeriesKind { OMEGA_HALVES, ERDOS_BORWEIN, BIG_OMEGA_HALVES };

struct SeriesResult {
    double value = 0;
    std::uint64_t n_terms = 0;
    double tail_bound = 0;
    SeriesKind kind = SeriesKind::OMEGA_HALVES;
};

std::string_view to_string(ConstantKind kind);
std::string_view to_string(SeriesKind kind);
std::optional<ConstantKind> parse_constant_kind(std::string_view name);
std::optional<SeriesKind> parse_series_kind(std::string_view name);

// Upper bounds on prime tails, valid for P >= 3. Only odd integers above P
// are compared against, which halves the naive integral bound.
double tail_inv_p_sq(std::uint64_t P);     // >= sum_{p>P} 1/p^2
double tail_inv_pm1_sq(std::uint64_t P);   // >= sum_{p>P} 1/(p-1)^2

// B1..B6, sum 1/p^2 and sum 1/(p-1)^2 truncated at p_max (>= 1000).
// The c_tau product kinds are served by ctau_lower_c1/ctau_lower_c3.
PrimeSumResult constant(ConstantKind kind, std::uint64_t p_max);
// Same, reusing an ascending table of all primes <= p_max.
PrimeSumResult constant(ConstantKind kind, std::span<const std::uint32_t> primes,
                        std::uint64_t p_max);
// The eight prime-sum kinds from a single prime table.
std::vector<PrimeSumResult> all_constants(std::uint64_t p_max);

// Lambert-type series evaluated in fixed point with n_terms + 64 fractional bits.
SeriesResult series(SeriesKind kind, std::uint64_t n_terms);

// |sum_{n<=N} w(n)/2^n - sum_{...} 1/(2^m - 1)| in exact fixed point, for
// w = omega (primes m), tau (all m) or big_omega (prime powers m). N >= 50.
double check_series_identity(std::uint64_t N);
double check_tau_series_identity(std::uint64_t N);
double check_big_omega_series_identity(std::uint64_t N);

}  // namespace erdoslab
