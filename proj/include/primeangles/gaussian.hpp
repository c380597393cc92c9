#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace primeangles {

enum class IdealKind : std::uint8_t { Split = 0, Inert = 1, Ramified = 2 };

// One prime ideal of Z[i]: ideal norm, angle of a generator a+ib (a>0, b>=0)
// reduced to [0, pi/2), and the generator itself.  Inert primes p = 3 mod 4
// enter as (p) with norm p^2, rep (p,0) and angle 0; the ramified prime is
// (1+i) with norm 2 and angle pi/4.
struct PrimeAngle {
    std::uint64_t norm = 0;
    double angle = 0.0;
    IdealKind kind = IdealKind::Split;
    std::uint32_t a = 0;
    std::uint32_t b = 0;

    friend bool operator==(const PrimeAngle&, const PrimeAngle&) = default;
};

// A power of a prime ideal, carrying the von Mangoldt weight
// lambda = log(norm of the underlying prime ideal).
struct PrimePowerRecord {
    std::uint64_t norm = 0;
    double angle = 0.0;   // r * theta_p reduced mod pi/2
    double lambda = 0.0;  // log N(p) > 0
};

// a^2 + b^2 = p for a prime p = 1 mod 4; returns the pair with a > b.
// Deterministic: same p always yields the same pair.  Square root of -1
// mod p by Tonelli-Shanks, then the Hermite-Serret Euclidean descent.
// Throws std::invalid_argument unless p = 1 mod 4 and p is prime-like
// (compositeness is not detected; callers pass sieved primes).
std::pair<std::uint32_t, std::uint32_t> decompose_split_prime(std::uint64_t p);

// All prime ideals of norm <= x, ordered by the rational prime p ascending;
// each split p contributes two records with angles theta and pi/2 - theta.
// split_only drops the inert and ramified ideals (sensitivity analysis).
std::vector<PrimeAngle> prime_ideal_angles(std::uint64_t x, bool split_only = false);

// Every prime-ideal power of norm <= X, each exactly once.
std::vector<PrimePowerRecord> prime_power_records(std::uint64_t X, bool split_only = false);
std::vector<PrimePowerRecord> prime_power_records(const std::vector<PrimeAngle>& ideals,
                                                  std::uint64_t X);

// Binary angle cache: header magic "GPAN1\0", u64 x, u64 record count, then
// per record (little-endian, packed): norm u64, angle f64, kind u8, a u32, b u32.
void save_angle_cache(const std::string& path, std::uint64_t x,
                      const std::vector<PrimeAngle>& records);
std::vector<PrimeAngle> load_angle_cache(const std::string& path, std::uint64_t* x_out = nullptr);

} // namespace primeangles
