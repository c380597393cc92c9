#pragma once

#include <cstdint>
#include <vector>

#include "primeangles/gaussian.hpp"

namespace primeangles {

// K equal arcs [j*pi/2K, (j+1)*pi/2K), j = 0..K-1, half-open, covering [0, pi/2).
struct SectorPartition {
    std::uint64_t K = 1;
};

struct VarianceReport {
    std::uint64_t x = 0;
    std::uint64_t K = 0;
    std::uint64_t N = 0;     // ideal count
    double mean = 0.0;       // N / K
    double variance = 0.0;   // (1/K) sum (bin_j - N/K)^2
    double ratio = 0.0;      // variance / mean
    double beta = 0.0;       // log K / log N, defined only when N >= 2
    bool beta_defined = false;
};

// Histogram of angles over the K-arc partition; boundary angles fall right.
std::vector<std::uint64_t> bin_counts(const std::vector<double>& angles, std::uint64_t K);
std::vector<std::uint64_t> bin_counts(const std::vector<PrimeAngle>& records, std::uint64_t K);

VarianceReport discrete_variance(const std::vector<std::uint64_t>& bins);

// Same report but computed from a *sorted* angle array without materializing
// K bins; required for K far beyond memory (figure-1 betas above 1).
VarianceReport discrete_variance_sorted(const std::vector<double>& sorted_angles,
                                        std::uint64_t K);

// Quadrature approximation of the continuous (sliding-window) variance:
// the window count over M uniformly spaced centers, window length pi/2K.
double sliding_variance(const std::vector<double>& angles, std::uint64_t K, std::uint64_t M);

struct GapStats {
    double min_gap = 0.0; // over distinct angles, circular on [0, pi/2)
    double max_gap = 0.0; // between consecutive sorted angles, incl. wrap
};

// Throws std::invalid_argument with fewer than 2 distinct angles.
GapStats gap_statistics(const std::vector<double>& angles);

// One VarianceReport per beta, K = round(N^beta) clamped to >= 1, sorted by beta.
std::vector<VarianceReport> figure1_curve(std::uint64_t x, const std::vector<double>& beta_grid,
                                          bool split_only = false);
std::vector<VarianceReport> figure1_curve(const std::vector<PrimeAngle>& records,
                                          std::uint64_t x,
                                          const std::vector<double>& beta_grid);

// CSV: header "x,K,N,beta,mean,variance,ratio", floats with 12 significant digits.
std::string variance_csv(const std::vector<VarianceReport>& rows);

} // namespace primeangles
