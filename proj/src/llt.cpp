#include "erdoslab/llt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "erdoslab/errors.hpp"
#include "erdoslab/primes.hpp"

namespace erdoslab {

namespace {

// Symmetric kernel for b_p on [-J, J], long double for accumulation.
struct Kernel {
    std::vector<long double> taps;  // index t + J
    long double truncated = 0;
    std::int64_t half_width() const { return static_cast<std::int64_t>(taps.size() / 2); }
};

Kernel make_kernel(std::uint32_t p, BpVariant variant, unsigned j_max, double min_atom) {
    Kernel k;
    const long double pp = p;
    const long double zero = 1.0L - 2.0L / pp;
    if (variant == BpVariant::SMALL_OMEGA) {
        k.taps = {1.0L / pp, zero, 1.0L / pp};
        return k;
    }
    // Atoms (1 - 1/p)/p^j for j = 1..J; the mass beyond J on each side is p^{-J}.
    std::vector<long double> atoms;
    long double a = (1.0L - 1.0L / pp) / pp;
    long double beyond = 1.0L / pp;
    for (unsigned j = 1;; ++j) {
        if (j_max ? j > j_max : (j > 1 && a < min_atom)) break;
        atoms.push_back(a);
        beyond /= pp;
        a /= pp;
    }
    const std::size_t J = atoms.size();
    k.taps.assign(2 * J + 1, 0);
    k.taps[J] = zero;
    for (std::size_t j = 1; j <= J; ++j) {
        k.taps[J + j] = atoms[j - 1];
        k.taps[J - j] = atoms[j - 1];
    }
    k.truncated = 2 * beyond;
    return k;
}

}  // namespace

double IntegerPMF::at(std::int64_t m) const noexcept {
    if (m < offset || m > max_support()) return 0;
    return mass[static_cast<std::size_t>(m - offset)];
}

double IntegerPMF::total() const noexcept {
    long double s = 0;
    for (const double v : mass) s += v;
    return static_cast<double>(s);
}

double IntegerPMF::mean() const noexcept {
    long double s = 0;
    long double t = 0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        s += static_cast<long double>(mass[i]) * (offset + static_cast<std::int64_t>(i));
        t += mass[i];
    }
    return t > 0 ? static_cast<double>(s / t) : 0.0;
}

double IntegerPMF::variance() const noexcept {
    long double t = 0;
    long double s1 = 0;
    long double s2 = 0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        const long double m = static_cast<long double>(offset + static_cast<std::int64_t>(i));
        t += mass[i];
        s1 += mass[i] * m;
        s2 += mass[i] * m * m;
    }
    if (t <= 0) return 0;
    const long double mu = s1 / t;
    return static_cast<double>(s2 / t - mu * mu);
}

std::string_view to_string(BpVariant v) {
    return v == BpVariant::BIG_OMEGA ? "big_omega" : "omega";
}

IntegerPMF bp_pmf(std::uint32_t p, BpVariant variant, unsigned j_max) {
    if (p < 2) throw std::invalid_argument("bp_pmf: p must be >= 2");
    if (variant == BpVariant::BIG_OMEGA && j_max < 1) {
        throw std::invalid_argument("bp_pmf: j_max must be >= 1");
    }
    const Kernel k = make_kernel(p, variant, j_max, 0);
    IntegerPMF out;
    out.offset = -k.half_width();
    out.mass.assign(k.taps.begin(), k.taps.end());
    out.truncated_mass = static_cast<double>(k.truncated);
    return out;
}

double bp_variance(std::uint32_t p, BpVariant variant) {
    const double pp = p;
    if (variant == BpVariant::SMALL_OMEGA) return 2.0 / pp;
    // 2 (1 - 1/p) sum_j j^2 p^{-j} = 2 (p + 1) / (p - 1)^2
    return 2.0 * (pp + 1) / ((pp - 1) * (pp - 1));
}

IntegerPMF convolve(const IntegerPMF& a, const IntegerPMF& b) {
    IntegerPMF out;
    if (a.mass.empty() || b.mass.empty()) {
        out.truncated_mass = a.truncated_mass + b.truncated_mass;
        return out;
    }
    out.offset = a.offset + b.offset;
    std::vector<long double> acc(a.mass.size() + b.mass.size() - 1, 0);
    for (std::size_t i = 0; i < a.mass.size(); ++i) {
        for (std::size_t j = 0; j < b.mass.size(); ++j) {
            acc[i + j] += static_cast<long double>(a.mass[i]) * b.mass[j];
        }
    }
    out.mass.assign(acc.begin(), acc.end());
    // Mass lost on either side is lost from the product, weighted by what survived on the other.
    out.truncated_mass = a.truncated_mass + b.truncated_mass - a.truncated_mass * b.truncated_mass;
    return out;
}

IntegerPMF sum_pmf(double w, double z, BpVariant variant, const SumPmfOptions& opts) {
    if (!(w >= 2) || !(w < z)) throw std::invalid_argument("sum_pmf: need 2 <= w < z");
    const auto z_int = static_cast<std::uint64_t>(std::floor(z));
    if (z_int > opts.z_budget) {
        throw BudgetError("sum_pmf: z exceeds the prime-table budget", z_int, opts.z_budget);
    }
    const auto primes = primes_in_range(static_cast<std::uint64_t>(std::floor(w)), z_int);

    std::vector<long double> cur{1.0L};
    std::vector<long double> next;
    std::int64_t offset = 0;
    long double truncated = 0;
    const long double step_budget =
        primes.empty() ? 0.0L : static_cast<long double>(opts.clip_budget) / primes.size();

    for (const auto p : primes) {
        const Kernel k = make_kernel(p, variant, opts.j_max, opts.min_atom);
        const std::size_t kw = k.taps.size();
        next.assign(cur.size() + kw - 1, 0.0L);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const long double c = cur[i];
            long double* dst = next.data() + i;
            for (std::size_t t = 0; t < kw; ++t) dst[t] += c * k.taps[t];
        }
        offset -= k.half_width();
        // Whatever the kernel dropped is lost from every surviving path.
        long double kept = 0;
        for (const auto v : cur) kept += v;
        truncated += kept * k.truncated;

        // Trim the same number of entries from both ends while this step's
        // share of the clip budget allows. Each removed atom at m is charged
        // (1 + m^2), so the variance lost to clipping obeys the budget as well.
        std::size_t lo = 0;
        std::size_t hi = next.size();
        long double removed = 0;
        long double charged = 0;
        while (hi - lo > 2) {
            const long double pair = next[lo] + next[hi - 1];
            const long double m = static_cast<long double>(offset + static_cast<std::int64_t>(lo));
            const long double cost = pair * (1 + m * m);
            if (charged + cost > step_budget) break;
            charged += cost;
            removed += pair;
            ++lo;
            --hi;
        }
        truncated += removed;
        offset += static_cast<std::int64_t>(lo);
        cur.assign(next.begin() + static_cast<std::ptrdiff_t>(lo),
                   next.begin() + static_cast<std::ptrdiff_t>(hi));
    }

    IntegerPMF out;
    out.offset = offset;
    out.mass.assign(cur.begin(), cur.end());
    out.truncated_mass = static_cast<double>(truncated);
    return out;
}

double gaussian_local(std::int64_t m, double L) {
    if (!(L > 0)) throw std::invalid_argument("gaussian_local: L must be positive");
    const double md = static_cast<double>(m);
    return std::exp(-md * md / (4 * L)) / (2 * std::sqrt(std::numbers::pi * L));
}

LltDeviation llt_deviation(const IntegerPMF& pmf, double z, LltScale scale) {
    LltDeviation d;
    d.L = scale == LltScale::EXACT_VARIANCE ? pmf.variance() / 2 : std::log(std::log(z));
    if (!(d.L > 0)) throw std::invalid_argument("llt_deviation: nonpositive scale L");
    d.peak = 1 / (2 * std::sqrt(std::numbers::pi * d.L));
    for (std::size_t i = 0; i < pmf.mass.size(); ++i) {
        const std::int64_t m = pmf.offset + static_cast<std::int64_t>(i);
        const double dev = std::fabs(pmf.mass[i] - gaussian_local(m, d.L));
        if (dev > d.deviation) {
            d.deviation = dev;
            d.argmax = m;
        }
    }
    return d;
}

LltDeviation llt_deviation(double w, double z, BpVariant variant, LltScale scale,
                           const SumPmfOptions& opts) {
    return llt_deviation(sum_pmf(w, z, variant, opts), z, scale);
}

}  // namespace erdoslab
