#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace primeangles::rmt {

enum class Group { Unitary, Symplectic };

struct MomentSpec {
    Group group = Group::Unitary;
    int dim = 1; // N for U(N), 2g for USp(2g)
    int m = 0;
    int n = 0;
};

// int_G tr(U^m) conj(tr(U^n)) dU, closed form.
// Unitary: N^2 at m = n = 0, else delta(m,n) min(|m|, N).
// Symplectic (2g = dim, m,n >= 1): the Keating-Odgers table; diagonal
// n+eta(n) / n-1+eta(n) / 2g by range, off-diagonal through eta(m), eta(n),
// eta(m+n) by the m+n vs 2g and n-m vs 2g cases.
double exact_moment(const MomentSpec& spec);

// One Haar sample.  U(N): QR of a complex Ginibre matrix with the R-diagonal
// pinned real positive; USp(2g): the same in the quaternion model, embedded
// as a 2g x 2g complex unitary.
Eigen::MatrixXcd sample_haar_matrix(Group group, int dim, std::uint64_t seed,
                                    std::uint64_t sample_id);

// eigenphases gamma_j in [0,1) of one Haar sample (lambda_j = e^{2 pi i gamma})
std::vector<double> sample_haar(Group group, int dim, std::uint64_t seed, std::uint64_t sample_id);

// periodic weight by Fourier modes: w(gamma) = sum hat_w(l) e^{2 pi i l gamma}
struct WeightModes {
    std::vector<long> ell;
    std::vector<std::complex<double>> hat;

    static WeightModes constant_one();
    double l2() const; // sum |hat_w|^2
    std::complex<double> eval(double gamma) const;
    std::complex<double> hat_at(long l) const;
};

// S_n(U) = sum_j w(gamma_j) e^{2 pi i n gamma_j}; evaluated directly and via
// sum_m hat_w(m-n) tr U^m, with the disagreement of the two routes returned
struct LinearStatistic {
    std::complex<double> direct;
    std::complex<double> fourier;
};
LinearStatistic linear_statistic(const std::vector<double>& eigenphases, long n,
                                 const WeightModes& w);

struct Prop54Result {
    double mc_mean = 0.0;
    double mc_se = 0.0;       // standard error of the Monte Carlo mean
    double exact = 0.0;       // moment-table evaluation of E|S_n|^2
    double prediction = 0.0;  // min(n, N) * sum |hat_w|^2
    std::uint64_t samples = 0;
};
// Monte Carlo E|S_n(U)|^2 with the closed-form comparison; deterministic in
// (seed, samples) independent of threading
Prop54Result prop54_check(Group group, int dim, long n, const WeightModes& w,
                          std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

// Monte Carlo of tr(U^m) conj(tr(U^n)) alone, for the moment-table suite
struct MomentMc {
    double mean = 0.0;
    double se = 0.0;
};
MomentMc moment_mc(const MomentSpec& spec, std::uint64_t samples, std::uint64_t seed,
                   unsigned threads = 0);

const char* group_name(Group g);

// the zero-density dictionary: N = round(log K / pi), n = round((alpha/2) log K / pi)
struct SweepSpec {
    int N = 0;
    long n = 0;
    double alpha = 0.0;
    WeightModes w;
};
SweepSpec sweep_spec(double logK, double alpha, WeightModes w);

// prop-5.4 predictions along an alpha grid, normalized by (log K / pi) l2(w):
// curve data for the min(alpha, 2) shape, emitted rather than asserted
struct DictionaryRow {
    double alpha = 0.0;
    int N = 0;
    long n = 0;
    double prediction = 0.0;
    double normalized = 0.0;
};
std::vector<DictionaryRow> conjecture53_curve(double logK, const std::vector<double>& alphas,
                                              const WeightModes& w);

// CSV: "group,dim,n,samples,mc_mean,mc_se,exact,prediction"
struct RmtRow {
    Group group = Group::Unitary;
    int dim = 0;
    long n = 0;
    std::uint64_t samples = 0;
    double mc_mean = 0, mc_se = 0, exact = 0, prediction = 0;
};
std::string rmt_csv(const std::vector<RmtRow>& rows);

} // namespace primeangles::rmt
