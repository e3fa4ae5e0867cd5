#pragma once

#include <cstdint>
#include <vector>

namespace erdoslab {

// Dickman-de Bruijn rho on the grid 0, h, 2h, ..., u_max with h = 1/m.
struct DickmanTable {
    double step = 0;
    std::vector<double> values;

    double u_max() const noexcept { return step * static_cast<double>(values.size() - 1); }
    // Linear interpolation between grid points; rho(u) = 1 for u <= 1.
    double operator()(double u) const;
};

// Solves u rho(u) = int_{u-1}^{u} rho(t) dt on the grid with the composite
// trapezoid rule (error O(step^2)). The step is rounded so that 1/step is an integer.
DickmanTable build_dickman_table(double u_max, double step = 1e-3);

// rho(u) with the given grid step (<= 1e-3).
double dickman_rho(double u, double step = 1e-3);

// Largest integer y with y <= x^{1/u}, computed so that exact powers land on
// the smooth side.
std::uint64_t smooth_threshold(std::uint64_t x, double u);

// |{n <= x : lpf(n) <= x^{1/u}}| / x.
double smooth_density(std::uint64_t x, double u);

// (1/x) |{n <= x : n is x^{1/u}-smooth and n+1 is x^{1/v}-smooth}|.
double pair_density(std::uint64_t x, double u, double v);

struct SmoothPairRow {
    std::uint64_t x = 0;
    double u = 0;
    double v = 0;
    double pair_density = 0;
    double density_u = 0;
    double density_v = 0;
    double rho_u = 0;
    double rho_v = 0;
};

// pair_density, both single densities and rho(u), rho(v) for every (u, v)
// pair, in one sweep of [1, x + 1].
std::vector<SmoothPairRow> smooth_pair_table(std::uint64_t x, const std::vector<double>& us,
                                             const std::vector<double>& vs);

}  // namespace erdoslab
