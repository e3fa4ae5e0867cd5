#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace erdoslab {

// All primes p <= limit, ascending. Limit must fit in 32 bits.
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

// All primes in (lo, hi], ascending, produced by a segmented sieve so that
// memory stays O(sqrt(hi) + segment).
std::vector<std::uint32_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

// Streams primes in (lo, hi] to `fn` in ascending order without materializing them.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint32_t)>& fn);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

}  // namespace erdoslab
