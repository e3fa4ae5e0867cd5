#pragma once

#include <cstdint>
#include <vector>

#include "erdoslab/sieve.hpp"

namespace erdoslab {

// Calls fn(w, i) for every n in [lo, hi], where i = n - w.lo and entries
// i + 1 .. i + lookahead are also populated.
template <class Fn>
void for_each_n(std::uint64_t lo, std::uint64_t hi, std::uint64_t lookahead, Fn&& fn) {
    sweep(lo, hi, lookahead, [&](const FactorWindow& w, std::uint64_t last) {
        const std::size_t end = static_cast<std::size_t>(last - w.lo);
        for (std::size_t i = 0; i <= end; ++i) fn(w, i);
    });
}

// x-grid for scans: multiples of 10 up to 1e3, multiples of 100 up to 1e4,
// then 1e4 * 10^{k/8} rounded to the nearest integer, all capped at x_max.
std::vector<std::uint64_t> scan_grid(std::uint64_t x_max);

}  // namespace erdoslab
