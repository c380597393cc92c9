#pragma once

#include <cstdint>
#include <vector>

#include "primeangles/ff_core.hpp"

namespace primeangles::ff {

// distinct-degree test: S^{q^n} = S mod f and gcd checks at proper divisors
bool is_irreducible(const Fq& F, const Poly& f);

// Lambda(f) = deg p when f = c p^j for an irreducible p, else 0
int von_mangoldt(const Fq& F, const Poly& f);

// (1/nu) sum_{d | nu} mu(d) q^{nu/d}: the count of monic irreducibles of degree nu
std::uint64_t irreducible_count(std::uint32_t q, int nu);

// Per-sector tallies of monic f with deg f = nu and f(0) != 0, by direction:
//   lambda_w[u] = sum Lambda(f), prime_n[u] = #irreducible, count[u] = #f
struct SectorTallies {
    int nu = 0;
    std::vector<std::int64_t> lambda_w;
    std::vector<std::int64_t> prime_n;
    std::vector<std::int64_t> count;
};

// one pass over the q^nu monic polynomials of degree nu
SectorTallies sector_tallies(const DirGroup& G, int nu);

std::int64_t psi_sector(const DirGroup& G, const Series& u, int nu);
std::int64_t n_sector(const DirGroup& G, const Series& u, int nu);

struct FfVarianceReport {
    std::uint32_t q = 0;
    int k = 0;
    int kappa = 0;
    int nu = 0;
    double mean_psi = 0.0;
    double var_psi = 0.0;
    double mean_n = 0.0;
    double var_n = 0.0;
    double theorem_prediction = 0.0; // q^{nu-kappa} * case factor for Var(Psi)
    int eta = 0;                     // 1 iff nu even
    bool prediction_in_range = true; // the theorem's hypotheses on (kappa, q)
};

// exact integer-arithmetic mean/variance of Psi_{k,nu} and N_{k,nu} over all
// sectors; brute-force path, budget-guarded by q^{nu+kappa}
FfVarianceReport ff_variance(std::uint32_t q, int k, int nu);
FfVarianceReport ff_variance(const DirGroup& G, const SectorTallies& t);

// the case factor of the variance theorem: nu+eta, nu-1+eta, or 2 kappa-2
double theorem_var_psi_factor(int kappa, int nu);

// exact mean square of R(u) = sum over non-prime f of Lambda(f) in sector u,
// reported with the q^{nu-2kappa} + q^{2nu/3-kappa} reference bound
struct RemainderReport {
    double mean_square = 0.0;
    double reference_bound = 0.0;
};
RemainderReport remainder_meansquare(std::uint32_t q, int k, int nu);

// CSV: "q,k,kappa,nu,mean_psi,var_psi,var_n,prediction,ratio"
std::string ff_variance_csv(const std::vector<FfVarianceReport>& rows);

} // namespace primeangles::ff
