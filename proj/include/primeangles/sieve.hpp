#pragma once

#include <cstdint>
#include <vector>

namespace primeangles {

// Segmented sieve of Eratosthenes.  Returns exactly the primes <= x,
// ascending.  Throws budget_error if the output would not fit in the
// configured memory budget, std::invalid_argument if x < 2.
std::vector<std::uint64_t> sieve_primes(std::uint64_t x);

// Segment size in odd residues (default 1 << 22), exposed for tuning.
std::vector<std::uint64_t> sieve_primes(std::uint64_t x, std::size_t segment_odds);

} // namespace primeangles
