#include "erdoslab/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "erdoslab/scan.hpp"

namespace erdoslab {

double DickmanTable::operator()(double u) const {
    if (u < 0) throw std::invalid_argument("dickman rho: u must be >= 0");
    if (u <= 1) return 1.0;
    if (u > u_max() + 1e-12) throw std::out_of_range("dickman rho: u beyond table");
    const double pos = u / step;
    const auto k = std::min(static_cast<std::size_t>(pos), values.size() - 2);
    const double frac = pos - static_cast<double>(k);
    return values[k] + frac * (values[k + 1] - values[k]);
}

DickmanTable build_dickman_table(double u_max, double step) {
    if (!(step > 0) || step > 1e-3) throw std::invalid_argument("dickman rho: need 0 < step <= 1e-3");
    if (u_max < 0) throw std::invalid_argument("dickman rho: u must be >= 0");
    const auto m = static_cast<std::size_t>(std::llround(1.0 / step));
    const long double h = 1.0L / m;
    const auto n = static_cast<std::size_t>(std::ceil(std::max(u_max, 1.0) * m - 1e-9)) + 1;

    std::vector<long double> rho(n, 1.0L);
    // window = h * (rho[k-m]/2 + rho[k-m+1] + ... + rho[k-1]); the implicit
    // trapezoid equation u_k rho_k = window + h rho_k / 2 is solved for rho_k.
    long double inner = 0;  // rho[k-m+1] + ... + rho[k-1], starting at k = m+1
    for (std::size_t i = 2; i <= m && i < n; ++i) inner += rho[i];
    for (std::size_t k = m + 1; k < n; ++k) {
        const long double u = static_cast<long double>(k) * h;
        const long double window = h * (rho[k - m] / 2 + inner);
        rho[k] = window / (u - h / 2);
        inner += rho[k] - rho[k - m + 1];
    }

    DickmanTable t;
    t.step = static_cast<double>(h);
    t.values.assign(rho.begin(), rho.end());
    return t;
}

double dickman_rho(double u, double step) {
    if (u < 0) throw std::invalid_argument("dickman rho: u must be >= 0");
    if (u <= 1) return 1.0;
    return build_dickman_table(u, step)(u);
}

std::uint64_t smooth_threshold(std::uint64_t x, double u) {
    if (!(u >= 1)) throw std::invalid_argument("smooth_threshold: u must be >= 1");
    auto y = static_cast<std::uint64_t>(std::pow(static_cast<long double>(x), 1.0L / u));
    // Correct floating error in either direction: y^u <= x < (y+1)^u.
    auto fits = [&](std::uint64_t c) {
        return std::pow(static_cast<long double>(c), static_cast<long double>(u)) <=
               static_cast<long double>(x) * (1 + 1e-18L);
    };
    while (y > 1 && !fits(y)) --y;
    while (fits(y + 1)) ++y;
    return y;
}

namespace {

void check_uv(std::uint64_t x, double u) {
    if (x < 1000) throw std::invalid_argument("smooth densities: x must be >= 1000");
    if (!(u >= 1) || u > std::log2(static_cast<double>(x))) {
        throw std::invalid_argument("smooth densities: need 1 <= u <= log2 x");
    }
}

}  // namespace

double smooth_density(std::uint64_t x, double u) {
    check_uv(x, u);
    const std::uint64_t y = smooth_threshold(x, u);
    std::uint64_t hits = 0;
    for_each_n(1, x, 0, [&](const FactorWindow& w, std::size_t i) { hits += w.lpf[i] <= y; });
    return static_cast<double>(hits) / static_cast<double>(x);
}

double pair_density(std::uint64_t x, double u, double v) {
    check_uv(x, u);
    check_uv(x, v);
    const std::uint64_t yu = smooth_threshold(x, u);
    const std::uint64_t yv = smooth_threshold(x, v);
    std::uint64_t hits = 0;
    for_each_n(1, x, 1, [&](const FactorWindow& w, std::size_t i) {
        hits += w.lpf[i] <= yu && w.lpf[i + 1] <= yv;
    });
    return static_cast<double>(hits) / static_cast<double>(x);
}

std::vector<SmoothPairRow> smooth_pair_table(std::uint64_t x, const std::vector<double>& us,
                                             const std::vector<double>& vs) {
    for (const double u : us) check_uv(x, u);
    for (const double v : vs) check_uv(x, v);
    std::vector<std::uint64_t> yu, yv;
    for (const double u : us) yu.push_back(smooth_threshold(x, u));
    for (const double v : vs) yv.push_back(smooth_threshold(x, v));
    std::vector<std::uint64_t> pair(us.size() * vs.size(), 0), su(us.size(), 0), sv(vs.size(), 0);
    for_each_n(1, x, 1, [&](const FactorWindow& w, std::size_t i) {
        const std::uint64_t a = w.lpf[i];
        const std::uint64_t b = w.lpf[i + 1];
        for (std::size_t j = 0; j < vs.size(); ++j) sv[j] += a <= yv[j];
        for (std::size_t k = 0; k < us.size(); ++k) {
            if (a > yu[k]) continue;
            ++su[k];
            for (std::size_t j = 0; j < vs.size(); ++j) pair[k * vs.size() + j] += b <= yv[j];
        }
    });
    double u_top = 1;
    for (const double u : us) u_top = std::max(u_top, u);
    for (const double v : vs) u_top = std::max(u_top, v);
    const DickmanTable rho = build_dickman_table(u_top);
    const double xd = static_cast<double>(x);
    std::vector<SmoothPairRow> rows;
    for (std::size_t k = 0; k < us.size(); ++k) {
        for (std::size_t j = 0; j < vs.size(); ++j) {
            SmoothPairRow r;
            r.x = x;
            r.u = us[k];
            r.v = vs[j];
            r.pair_density = static_cast<double>(pair[k * vs.size() + j]) / xd;
            r.density_u = static_cast<double>(su[k]) / xd;
            r.density_v = static_cast<double>(sv[j]) / xd;
            r.rho_u = rho(us[k]);
            r.rho_v = rho(vs[j]);
            rows.push_back(r);
        }
    }
    return rows;
}

}  // namespace erdoslab
