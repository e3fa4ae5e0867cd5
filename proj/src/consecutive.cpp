#include "erdoslab/consecutive.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "erdoslab/ctau.hpp"
#include "erdoslab/prime_constants.hpp"
#include "erdoslab/scan.hpp"

namespace erdoslab {

namespace {

void require_x(std::uint64_t x, std::uint64_t min, const char* who) {
    if (x < min) {
        throw std::invalid_argument(std::string(who) + ": x must be >= " + std::to_string(min));
    }
}

}  // namespace

std::string_view to_string(ArithFn f) {
    switch (f) {
        case ArithFn::OMEGA: return "omega";
        case ArithFn::BIG_OMEGA: return "bigomega";
        case ArithFn::TAU: return "tau";
    }
    return "?";
}

std::optional<ArithFn> parse_arith_fn(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "omega") return ArithFn::OMEGA;
    if (lower == "bigomega" || lower == "big_omega") return ArithFn::BIG_OMEGA;
    if (lower == "tau") return ArithFn::TAU;
    return std::nullopt;
}

Normalization default_normalization(ArithFn f) {
    switch (f) {
        case ArithFn::OMEGA: return {kB5, 1.0};
        case ArithFn::BIG_OMEGA: return {kB6, 1.0};
        case ArithFn::TAU: return {0.0, kCtauEmpirical};
    }
    return {};
}

double loglog(double x) { return std::log(std::log(x)); }

double equal_density(ArithFn f, std::uint64_t x) {
    require_x(x, 10, "equal_density");
    std::uint64_t hits = 0;
    for_each_n(1, x, 1, [&](const FactorWindow& w, std::size_t i) {
        hits += value_at(w, i, f) == value_at(w, i + 1, f);
    });
    return static_cast<double>(hits) / static_cast<double>(x);
}

std::optional<double> normalize_density(double density, std::uint64_t x, double b_shift, double c) {
    const double arg = loglog(static_cast<double>(x)) + b_shift;
    if (!(arg > 0) || c == 0) return std::nullopt;
    return density * 2 * std::sqrt(std::numbers::pi * arg) / c;
}

std::optional<double> normalized_density(ArithFn f, std::uint64_t x, double b_shift, double c) {
    return normalize_density(equal_density(f, x), x, b_shift, c);
}

double impute_B(double density, std::uint64_t x, double c) {
    if (!(density > 0)) throw std::invalid_argument("impute_B: density must be positive");
    return c * c / (4 * std::numbers::pi * density * density) - loglog(static_cast<double>(x));
}

std::vector<ScanRow> density_scan(ArithFn f, std::span<const std::uint64_t> grid,
                                  Normalization norm) {
    if (grid.empty()) return {};
    if (!std::is_sorted(grid.begin(), grid.end()) || grid.front() < 2) {
        throw std::invalid_argument("density_scan: grid must be ascending and >= 2");
    }
    std::vector<ScanRow> rows;
    std::uint64_t hits = 0;
    std::size_t next = 0;
    for_each_n(1, grid.back(), 1, [&](const FactorWindow& w, std::size_t i) {
        hits += value_at(w, i, f) == value_at(w, i + 1, f);
        const std::uint64_t n = w.lo + i;
        while (next < grid.size() && grid[next] == n) {
            ScanRow r;
            r.x = n;
            r.f = f;
            r.count = hits;
            r.density = static_cast<double>(hits) / static_cast<double>(n);
            r.normalized = normalize_density(r.density, n, norm.b_shift, norm.c);
            r.imputed_B = r.density > 0 ? impute_B(r.density, n, norm.c)
                                        : std::numeric_limits<double>::quiet_NaN();
            r.b_shift = norm.b_shift;
            r.c = norm.c;
            rows.push_back(r);
            ++next;
        }
    });
    return rows;
}

std::uint64_t DiffHistogram::total() const noexcept {
    std::uint64_t t = 0;
    for (const auto& [m, c] : counts) t += c;
    return t;
}

double DiffHistogram::mean() const noexcept {
    const auto t = total();
    if (t == 0) return 0;
    long double s = 0;
    for (const auto& [m, c] : counts) s += static_cast<long double>(m) * c;
    return static_cast<double>(s / t);
}

double DiffHistogram::variance() const noexcept {
    const auto t = total();
    if (t == 0) return 0;
    const long double mu = mean();
    long double s = 0;
    for (const auto& [m, c] : counts) s += (m - mu) * (m - mu) * c;
    return static_cast<double>(s / t);
}

DiffHistogram diff_histogram(ArithFn f, std::uint64_t x) {
    require_x(x, 1000, "diff_histogram");
    DiffHistogram h;
    h.f = f;
    h.x = x;
    // Dense accumulation over a small symmetric range; folded into the map afterwards.
    constexpr std::int64_t kSpan = 64;
    std::vector<std::uint64_t> dense(2 * kSpan + 1, 0);
    for_each_n(1, x, 1, [&](const FactorWindow& w, std::size_t i) {
        std::int64_t m = 0;
        if (f == ArithFn::TAU) {
            const std::uint64_t a = w.tau[i];
            const std::uint64_t b = w.tau[i + 1];
            if (!is_pow2_ratio(a, b)) return;
            m = static_cast<std::int64_t>(__builtin_ctzll(b)) - __builtin_ctzll(a);
        } else {
            m = static_cast<std::int64_t>(value_at(w, i + 1, f)) -
                static_cast<std::int64_t>(value_at(w, i, f));
        }
        ++dense[static_cast<std::size_t>(m + kSpan)];
    });
    for (std::int64_t m = -kSpan; m <= kSpan; ++m) {
        const auto c = dense[static_cast<std::size_t>(m + kSpan)];
        if (c) h.counts[m] = c;
    }
    return h;
}

double predicted_count(ArithFn f, std::uint64_t x, std::int64_t m, Normalization norm) {
    const double var = 2 * (loglog(static_cast<double>(x)) + norm.b_shift);
    if (!(var > 0)) return std::numeric_limits<double>::quiet_NaN();
    const double total = f == ArithFn::TAU ? norm.c * static_cast<double>(x)
                                           : static_cast<double>(x);
    const double md = static_cast<double>(m);
    return total * std::exp(-md * md / (2 * var)) / std::sqrt(2 * std::numbers::pi * var);
}

MomentCheck moment_check(std::uint64_t x) {
    require_x(x, 1000, "moment_check");
    long double s1 = 0, s2 = 0, t1 = 0, t2 = 0;
    for_each_n(1, x, 0, [&](const FactorWindow& w, std::size_t i) {
        const long double a = w.omega[i];
        const long double b = w.big_omega[i];
        s1 += a;
        s2 += a * a;
        t1 += b;
        t2 += b * b;
    });
    const long double n = static_cast<long double>(x);
    const double ll = loglog(static_cast<double>(x));
    MomentCheck m;
    m.mean_omega = static_cast<double>(s1 / n) - ll;
    m.mean_big_omega = static_cast<double>(t1 / n) - ll;
    m.var_omega = static_cast<double>(s2 / n - (s1 / n) * (s1 / n)) - ll;
    m.var_big_omega = static_cast<double>(t2 / n - (t1 / n) * (t1 / n)) - ll;
    return m;
}

double covariance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("covariance: need equal, nonzero lengths");
    }
    long double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= a.size();
    mb /= b.size();
    long double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
    return static_cast<double>(s / a.size());
}

double neighbor_covariance(ArithFn f, std::uint64_t x) {
    require_x(x, 1000, "neighbor_covariance");
    if (f == ArithFn::TAU) throw std::invalid_argument("neighbor_covariance: f must be omega or bigomega");
    // Integer sums are exact; the covariance is formed once at the end.
    std::uint64_t sa = 0, sb = 0;
    unsigned __int128 sab = 0;
    for_each_n(1, x - 1, 1, [&](const FactorWindow& w, std::size_t i) {
        const std::uint64_t a = value_at(w, i, f);
        const std::uint64_t b = value_at(w, i + 1, f);
        sa += a;
        sb += b;
        sab += a * b;
    });
    const long double n = static_cast<long double>(x - 1);
    return static_cast<double>(static_cast<long double>(sab) / n -
                               (static_cast<long double>(sa) / n) * (static_cast<long double>(sb) / n));
}

}  // namespace erdoslab
