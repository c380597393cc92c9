#include "primeangles/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "primeangles/common.hpp"

namespace primeangles {

namespace {

// Upper bound on pi(x), Rosser-Schoenfeld style, for the budget estimate.
std::uint64_t pi_upper(std::uint64_t x) {
    if (x < 17) return 8;
    double xd = static_cast<double>(x);
    return static_cast<std::uint64_t>(1.3 * xd / std::log(xd)) + 8;
}

} // namespace

std::vector<std::uint64_t> sieve_primes(std::uint64_t x) {
    return sieve_primes(x, std::size_t{1} << 22);
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t x, std::size_t segment_odds) {
    if (x < 2) throw std::invalid_argument("sieve_primes: x must be >= 2");
    if (segment_odds < 1024) segment_odds = 1024;

    const std::uint64_t est = pi_upper(x);
    const std::uint64_t need = est * sizeof(std::uint64_t) + segment_odds + (std::uint64_t{1} << 20);
    if (need > budget_bytes())
        throw budget_error("sieve_primes: estimated " + std::to_string(need >> 20) +
                           " MiB exceeds PRIME_ANGLES_BUDGET_MB=" + std::to_string(budget_mb()));

    std::vector<std::uint64_t> primes;
    primes.reserve(static_cast<std::size_t>(est));
    primes.push_back(2);
    if (x == 2) return primes;

    // base primes up to sqrt(x), plain odd sieve
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (root * root > x) --root;
    while ((root + 1) * (root + 1) <= x) ++root;

    std::vector<char> base(root / 2 + 1, 1); // base[i] <-> 2i+1, i >= 1
    for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= root; ++i) {
        if (!base[i]) continue;
        const std::uint64_t p = 2 * i + 1;
        for (std::uint64_t j = (p * p) / 2; j <= root / 2; j += p) base[j] = 0;
    }
    std::vector<std::uint64_t> small;
    for (std::uint64_t i = 1; 2 * i + 1 <= root; ++i)
        if (base[i]) small.push_back(2 * i + 1);

    // segmented sieve over odd numbers in [3, x]
    std::vector<char> seg(segment_odds);
    std::vector<std::uint64_t> next(small.size());
    for (std::size_t s = 0; s < small.size(); ++s) next[s] = (small[s] * small[s]) / 2;

    const std::uint64_t last_idx = (x - 1) / 2; // odd n = 2i+1 <= x
    for (std::uint64_t low = 1; low <= last_idx; low += segment_odds) {
        const std::uint64_t high = std::min(low + segment_odds - 1, last_idx);
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(high - low + 1), 1);
        for (std::size_t s = 0; s < small.size(); ++s) {
            const std::uint64_t p = small[s];
            std::uint64_t j = next[s];
            if (j > high) continue;
            if (j < low) j = low + (p - (low - j) % p) % p;
            for (; j <= high; j += p) seg[j - low] = 0;
            next[s] = j;
        }
        for (std::uint64_t i = low; i <= high; ++i)
            if (seg[i - low]) primes.push_back(2 * i + 1);
    }
    return primes;
}

} // namespace primeangles
