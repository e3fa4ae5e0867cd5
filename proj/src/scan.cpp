#include "erdoslab/scan.hpp"

#include <cmath>

namespace erdoslab {

std::vector<std::uint64_t> scan_grid(std::uint64_t x_max) {
    std::vector<std::uint64_t> grid;
    for (std::uint64_t x = 10; x <= 1000 && x <= x_max; x += 10) grid.push_back(x);
    for (std::uint64_t x = 1100; x <= 10000 && x <= x_max; x += 100) grid.push_back(x);
    for (int k = 1;; ++k) {
        const auto x = static_cast<std::uint64_t>(std::llround(1e4 * std::pow(10.0, k / 8.0)));
        if (x > x_max) break;
        grid.push_back(x);
    }
    return grid;
}

}  // namespace erdoslab
