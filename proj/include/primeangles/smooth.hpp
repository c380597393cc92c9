#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "primeangles/gaussian.hpp"
#include "primeangles/window.hpp"

namespace primeangles {

// pi/2-periodization of the angular window at scale 1/K:
// F_K(theta) = sum_j f((K/(pi/2)) (theta - j pi/2))
double window_fk(double theta, std::uint64_t K, const WindowPair& w);

// Prime-power records of norm <= X filtered by the radial window, with the
// spectral sums T(k) = sum_a Lambda(a) Phi(N a / X) e^{4 i k theta_a} memoized.
class HeckeCache {
public:
    HeckeCache(const std::vector<PrimeAngle>& ideals, std::uint64_t X, const WindowPair& w,
               bool primes_only = false);
    HeckeCache(std::uint64_t X, const WindowPair& w, bool primes_only = false);

    std::uint64_t X() const { return X_; }
    const WindowPair& window() const { return *w_; }
    std::size_t size() const { return ang_.size(); }
    const std::vector<double>& angles() const { return ang_; }   // sorted
    const std::vector<double>& weights() const { return wgt_; }  // matching order
    double weight_sum() const { return wsum_; }

    // T(k); negative k by conjugation
    std::complex<double> hecke(long k) const;
    // T(0..kmax) inclusive, computed once per cache by phase rotation
    const std::vector<std::complex<double>>& hecke_upto(long kmax) const;

private:
    std::uint64_t X_;
    const WindowPair* w_;
    std::vector<double> ang_, wgt_;
    double wsum_ = 0.0;
    mutable std::vector<std::complex<double>> tcache_;
};

std::complex<double> hecke_sum(long k, const HeckeCache& cache);

// sum over records of Lambda Phi(N/X) F_K(theta_a - theta)
double psi_direct(double theta, std::uint64_t K, const HeckeCache& cache);

// truncated Fourier synthesis sum_{|k|<=kmax} e^{-4ik theta} fhat(k/K)/K T(k);
// kmax < 0 selects the window's default truncation
double psi_fourier(double theta, std::uint64_t K, const HeckeCache& cache, long kmax = -1);

// Var(psi) = sum_{k != 0} |fhat(k/K)/K|^2 |T(k)|^2.  Evaluated by the literal
// spectral sum when kmax * records is affordable, otherwise by the equivalent
// window-autocorrelation pair sum (same identity read in the angle domain).
double variance_parseval(std::uint64_t K, const HeckeCache& cache, long kmax = -1);

// theta-grid average of |psi - mean|^2; M = 0 selects max(10^4, 20 K)
double variance_quadrature(std::uint64_t K, const HeckeCache& cache, std::uint64_t M = 0);

struct Conjecture51 {
    double measured = 0.0;
    double predicted = 0.0; // c2(f,Phi) (X/K) min(log X, 2 log K)
};
Conjecture51 conjecture51_ratio(std::uint64_t K, const HeckeCache& cache);

// CSV: "X,K,kmax,var_parseval,var_quadrature,predicted_c51,ratio"
struct SmoothVarianceRow {
    std::uint64_t X = 0;
    std::uint64_t K = 0;
    long kmax = 0;
    double var_parseval = 0.0;
    double var_quadrature = 0.0;
    double predicted_c51 = 0.0;
    double ratio = 0.0;
};
std::string smooth_variance_csv(const std::vector<SmoothVarianceRow>& rows);

} // namespace primeangles
