#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace primeangles::ff {

// Prime field F_p, p odd.  Elements are uint32_t residues in [0, p).
class Fq {
public:
    explicit Fq(std::uint32_t p);
    std::uint32_t p() const { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p_ - b) % p_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t inv(std::uint32_t a) const; // a != 0

private:
    std::uint32_t p_;
};

// Polynomial over F_q in the variable S, coefficients ascending, canonical
// (no trailing zeros; zero polynomial = empty vector).
struct Poly {
    std::vector<std::uint32_t> c;

    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    std::uint32_t at(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    std::uint32_t constant() const { return at(0); }
    std::uint32_t lead() const { return c.empty() ? 0 : c.back(); }

    friend bool operator==(const Poly&, const Poly&) = default;
};

Poly poly_trim(std::vector<std::uint32_t> coeffs);
Poly poly_add(const Fq& F, const Poly& a, const Poly& b);
Poly poly_sub(const Fq& F, const Poly& a, const Poly& b);
Poly poly_mul(const Fq& F, const Poly& a, const Poly& b);
// division with remainder by a nonzero divisor
std::pair<Poly, Poly> poly_divrem(const Fq& F, const Poly& a, const Poly& b);
Poly poly_mod(const Fq& F, const Poly& a, const Poly& m);
Poly poly_gcd(const Fq& F, Poly a, Poly b); // monic gcd
Poly poly_monic(const Fq& F, const Poly& a);
Poly poly_powmod(const Fq& F, Poly base, std::uint64_t e, const Poly& m);
std::uint32_t poly_eval(const Fq& F, const Poly& a, std::uint32_t x);

// textual form "c0+c1*S+c2*S^2"; parse round-trips exactly
std::string poly_format(const Poly& a);
Poly poly_parse(const Fq& F, const std::string& text);

// Element of F_q[S]/(S^k): exactly k coefficients.
struct Series {
    int k = 0;
    std::vector<std::uint32_t> c; // size k

    std::uint32_t at(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    friend bool operator==(const Series&, const Series&) = default;
};

Series series_from_poly(const Fq& F, const Poly& a, int k);
Series series_one(int k);
Series series_mul(const Fq& F, const Series& a, const Series& b);
Series series_inverse(const Fq& F, const Series& a); // a(0) != 0
Series series_pow(const Fq& F, Series base, std::uint64_t e);

// sigma: S -> -S, i.e. negate odd coefficients; an involution
Series sigma(const Fq& F, const Series& a);
Poly sigma(const Fq& F, const Poly& a);

// Norm(f) = f(S) f(-S), a sigma-invariant (even) series
Series norm(const Fq& F, const Series& a);

bool is_even_series(const Series& a); // sigma(a) == a
// index of the lowest nonzero coefficient of (a - 1); returns k when a == 1
int low_index_minus_one(const Series& a);

// kappa = floor(k/2); |S^1_k| = q^kappa
int kappa_of(int k);
std::uint64_t direction_group_order(std::uint32_t q, int k);

// The norm-one, constant-term-one group S^1_k, enumerated exactly: the odd
// coefficients are free parameters, the even ones are forced by the norm
// equations.  Elements are in lexicographic order of the odd-coefficient
// vector, element 0 is the identity.
class DirGroup {
public:
    DirGroup(std::uint32_t q, int k); // throws budget_error over ~10^6 elements

    const Fq& field() const { return F_; }
    int k() const { return k_; }
    int kappa() const { return kappa_; }
    std::uint64_t order() const { return elems_.size(); }
    const std::vector<Series>& elements() const { return elems_; }
    const Series& element(std::size_t i) const { return elems_[i]; }

    std::uint32_t index_of(const Series& u) const; // throws if not a member
    std::uint32_t mul(std::uint32_t i, std::uint32_t j) const;
    std::uint32_t pow(std::uint32_t i, std::uint64_t e) const;
    std::uint32_t inverse(std::uint32_t i) const;
    std::uint64_t element_order(std::uint32_t i) const;

private:
    Fq F_;
    int k_, kappa_;
    std::vector<Series> elems_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// unique square root in S^1_k (odd group order): u^((q^kappa + 1)/2)
Series sqrt_in_group(const Fq& F, const Series& u);

// the direction U_k(f) = sqrt(f / sigma(f) mod S^k); requires f(0) != 0
Series direction(const Fq& F, const Poly& f, int k);

// true iff direction(f, k) == u
bool same_sector(const Fq& F, const Poly& f, const Series& u, int k);

// conversion to the A(T), B(T) split: f(S) = A(-S^2) + S B(-S^2), T = -S^2
std::pair<Poly, Poly> poly_to_ab(const Fq& F, const Poly& f);
Poly ab_to_poly(const Fq& F, const Poly& A, const Poly& B);

} // namespace primeangles::ff
