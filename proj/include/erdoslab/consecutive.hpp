#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "erdoslab/sieve.hpp"

namespace erdoslab {

enum class ArithFn { OMEGA, BIG_OMEGA, TAU };

std::string_view to_string(ArithFn f);
// Accepts "omega", "bigomega" and "tau" (case-insensitive).
std::optional<ArithFn> parse_arith_fn(std::string_view name);

inline std::uint64_t value_at(const FactorWindow& w, std::size_t i, ArithFn f) noexcept {
    switch (f) {
        case ArithFn::OMEGA: return w.omega[i];
        case ArithFn::BIG_OMEGA: return w.big_omega[i];
        case ArithFn::TAU: return w.tau[i];
    }
    return 0;
}

// Empirical limit of P(tau(n+1)/tau(n) is a power of two), used as the
// default tau normalization.
inline constexpr double kCtauEmpirical = 0.4888;

// Default (B_shift, c) normalization for each function: (B5, 1), (B6, 1), (0, c_tau).
struct Normalization {
    double b_shift = 0;
    double c = 1;
};
Normalization default_normalization(ArithFn f);

// log log x
double loglog(double x);

// |{n <= x : f(n) = f(n+1)}| / x.
double equal_density(ArithFn f, std::uint64_t x);

// density * 2 sqrt(pi (log log x + B_shift)) / c, or nullopt when the
// square-root argument is not positive.
std::optional<double> normalize_density(double density, std::uint64_t x, double b_shift, double c);
std::optional<double> normalized_density(ArithFn f, std::uint64_t x, double b_shift, double c);

// Inverts the Gaussian prediction density = c / (2 sqrt(pi (log log x + B))) for B.
double impute_B(double density, std::uint64_t x, double c);

struct ScanRow {
    std::uint64_t x = 0;
    ArithFn f = ArithFn::OMEGA;
    std::uint64_t count = 0;       // numerator of density
    double density = 0;
    std::optional<double> normalized;
    double imputed_B = 0;          // NaN when density is zero
    double b_shift = 0;
    double c = 1;
};

// Equal-neighbour densities at every grid point, from a single sweep.
std::vector<ScanRow> density_scan(ArithFn f, std::span<const std::uint64_t> grid,
                                  Normalization norm);

struct DiffHistogram {
    ArithFn f = ArithFn::OMEGA;
    std::uint64_t x = 0;
    // OMEGA/BIG_OMEGA: m = f(n+1) - f(n). TAU: m = log2(tau(n+1)/tau(n)),
    // over the n whose ratio is a power of two.
    std::map<std::int64_t, std::uint64_t> counts;

    std::uint64_t total() const noexcept;
    double mean() const noexcept;
    double variance() const noexcept;
};

DiffHistogram diff_histogram(ArithFn f, std::uint64_t x);

// Predicted histogram height at m: total * N(0, 2(log log x + B_shift)) density at m,
// with total = x for OMEGA/BIG_OMEGA and c * x for TAU.
double predicted_count(ArithFn f, std::uint64_t x, std::int64_t m, Normalization norm);

// Deviations of the empirical moments over n <= x from log log x.
struct MomentCheck {
    double mean_omega = 0;
    double mean_big_omega = 0;
    double var_omega = 0;
    double var_big_omega = 0;
};

MomentCheck moment_check(std::uint64_t x);

// Population covariance (1/len normalization) of two equal-length series.
double covariance(std::span<const double> a, std::span<const double> b);

// Cov(f(n), f(n+1)) over 1 <= n <= x-1, normalized by 1/(x-1).
double neighbor_covariance(ArithFn f, std::uint64_t x);

}  // namespace erdoslab
