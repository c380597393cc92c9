#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "primeangles/ff_core.hpp"
#include "primeangles/ff_stats.hpp"

namespace primeangles::ff {

// Characters of S^1_k (equivalently, the super-even Dirichlet characters mod
// S^k).  The group is decomposed into cyclic factors by greedy order-finding;
// a character is an exponent vector against that basis and its values are
// exact roots of unity (an exponent modulo the group exponent), turned into
// complex numbers only at summation time.
class CharacterTable {
public:
    CharacterTable(std::uint32_t q, int k); // budget-guarded around |G| <= 2*10^4
    explicit CharacterTable(DirGroup group);

    const DirGroup& group() const { return G_; }
    std::uint64_t size() const { return G_.order(); } // characters = group order
    std::uint32_t q() const { return G_.field().p(); }
    int k() const { return G_.k(); }
    int kappa() const { return G_.kappa(); }

    // chi = 0 is the trivial character
    int swan(std::uint32_t chi) const { return swan_[chi]; }
    std::uint64_t group_exponent() const { return E_; }

    // value exponent e with Xi(u) = exp(2 pi i e / E)
    std::uint64_t value_exponent(std::uint32_t chi, std::uint32_t elem) const;
    std::complex<double> value(std::uint32_t chi, std::uint32_t elem) const;
    // Dirichlet convention: 0 on polynomials with f(0) = 0
    std::complex<double> value_poly(std::uint32_t chi, const Poly& f) const;

    const std::vector<std::uint64_t>& basis_orders() const { return orders_; }

    // #{monic f : deg f = n, f(0) != 0, U_k(f) = u}, degrees 0..k-1, lazy
    const std::vector<std::int64_t>& sector_counts(int n) const;

private:
    void build_basis();
    void compute_swans();

    DirGroup G_;
    std::vector<std::uint32_t> basis_;        // element indices
    std::vector<std::uint64_t> orders_;       // cyclic factor orders m_i
    std::vector<std::vector<std::uint32_t>> dlog_; // exponent vectors per element
    std::vector<int> swan_;
    std::uint64_t E_ = 1;
    mutable std::vector<std::optional<std::vector<std::int64_t>>> counts_;
};

struct FrobeniusSpectrum {
    std::uint32_t chi = 0;
    int swan = 0;
    std::vector<std::complex<double>> lpoly; // c_0 .. c_d, degree d = swan
    std::vector<double> eigenangles;         // d - 1 phases of Theta
    double trivial_zero_residual = 0.0;      // |L(1)|
    double max_root_residual = 0.0;          // max_j |L(z_j)|
    double max_unitarity_error = 0.0;        // max_j | sqrt(q)|z_j| - 1 |
    double degree_certificate = 0.0;         // max |c_n| over d < n <= d+2
};

// L(z, Xi) for a nontrivial character: coefficients by sector counts, the
// trivial zero removed exactly, remaining roots via the companion matrix.
FrobeniusSpectrum l_polynomial(const CharacterTable& T, std::uint32_t chi);

// Psi(nu; Xi) = sum_{deg f = nu, monic} Lambda(f) Xi(f), exact enumeration
std::complex<double> character_prime_sum(const CharacterTable& T, std::uint32_t chi, int nu);
std::complex<double> character_prime_sum(const CharacterTable& T, const SectorTallies& tallies,
                                         std::uint32_t chi);

// the same sum through the explicit formula: -q^{nu/2} tr Theta^nu - 1
std::complex<double> character_prime_sum_trace(const FrobeniusSpectrum& fs, std::uint32_t q,
                                               int nu);

// all nontrivial spectra, cached companion solves
std::vector<FrobeniusSpectrum> all_spectra(const CharacterTable& T);

// Var(Psi_{k,nu}) = q^{-2 kappa} sum_{chi != 0} |Psi(nu; chi)|^2, trace path
double spectral_variance(const CharacterTable& T, int nu);
double spectral_variance(std::uint32_t q, int k, int nu);

struct KatzReport {
    double empirical = 0.0;  // avg of |tr Theta^nu|^2 over primitive chars mod S^{2 kappa}
    double usp_moment = 0.0; // the matching USp(2 kappa - 2) moment
    std::uint64_t primitive_count = 0;
    double nonprimitive_share = 0.0; // share of sum |Psi|^2 carried by swan < 2 kappa - 1
};
KatzReport katz_moment_comparison(std::uint32_t q, int k, int nu);

// max |(1/|G|) sum_u Xi1(u) conj(Xi2(u)) - delta| over all character pairs
double orthogonality_max_error(const CharacterTable& T);

} // namespace primeangles::ff
