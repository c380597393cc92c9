#include "primeangles/sector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "primeangles/common.hpp"

namespace primeangles {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Bin index under the half-open convention; clamped so that rounding at the
// top edge cannot produce K.
std::uint64_t bin_of(double angle, std::uint64_t K) {
    double t = angle * (static_cast<double>(K) / kHalfPi);
    auto j = static_cast<std::uint64_t>(t);
    if (j >= K) j = K - 1;
    return j;
}

VarianceReport report_from_moments(std::uint64_t K, std::uint64_t N, double sum_sq) {
    VarianceReport r;
    r.K = K;
    r.N = N;
    const double mean = static_cast<double>(N) / static_cast<double>(K);
    r.mean = mean;
    // sum over all K bins of (b_j - mean)^2 = sum b_j^2 - N^2/K
    r.variance = (sum_sq - static_cast<double>(N) * mean) / static_cast<double>(K);
    if (r.variance < 0) r.variance = 0; // float guard, exact value is >= 0
    r.ratio = mean > 0 ? r.variance / mean : 0.0;
    if (N >= 2) {
        r.beta = std::log(static_cast<double>(K)) / std::log(static_cast<double>(N));
        r.beta_defined = true;
    }
    return r;
}

} // namespace

std::vector<std::uint64_t> bin_counts(const std::vector<double>& angles, std::uint64_t K) {
    if (K < 1) throw std::invalid_argument("bin_counts: K must be >= 1");
    if (K * sizeof(std::uint64_t) > budget_bytes())
        throw budget_error("bin_counts: K bins exceed budget; use discrete_variance_sorted");
    std::vector<std::uint64_t> bins(K, 0);
    for (double a : angles) ++bins[bin_of(a, K)];
    return bins;
}

std::vector<std::uint64_t> bin_counts(const std::vector<PrimeAngle>& records, std::uint64_t K) {
    if (K < 1) throw std::invalid_argument("bin_counts: K must be >= 1");
    if (K * sizeof(std::uint64_t) > budget_bytes())
        throw budget_error("bin_counts: K bins exceed budget; use discrete_variance_sorted");
    std::vector<std::uint64_t> bins(K, 0);
    for (const PrimeAngle& r : records) ++bins[bin_of(r.angle, K)];
    return bins;
}

VarianceReport discrete_variance(const std::vector<std::uint64_t>& bins) {
    if (bins.empty()) throw std::invalid_argument("discrete_variance: K must be >= 1");
    std::uint64_t N = 0;
    double sum_sq = 0.0;
    for (std::uint64_t b : bins) {
        N += b;
        sum_sq += static_cast<double>(b) * static_cast<double>(b);
    }
    return report_from_moments(bins.size(), N, sum_sq);
}

VarianceReport discrete_variance_sorted(const std::vector<double>& sorted_angles,
                                        std::uint64_t K) {
    if (K < 1) throw std::invalid_argument("discrete_variance_sorted: K must be >= 1");
    double sum_sq = 0.0;
    std::uint64_t run = 0;
    std::uint64_t cur = 0;
    bool have = false;
    for (double a : sorted_angles) {
        const std::uint64_t j = bin_of(a, K);
        if (have && j == cur) {
            ++run;
        } else {
            sum_sq += static_cast<double>(run) * static_cast<double>(run);
            cur = j;
            run = 1;
            have = true;
        }
    }
    sum_sq += static_cast<double>(run) * static_cast<double>(run);
    return report_from_moments(K, sorted_angles.size(), sum_sq);
}

double sliding_variance(const std::vector<double>& angles, std::uint64_t K, std::uint64_t M) {
    if (K < 1 || M < K) throw std::invalid_argument("sliding_variance: need M >= K >= 1");
    if (angles.empty()) return 0.0;

    std::vector<double> sorted = angles;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double half = kHalfPi / (2.0 * static_cast<double>(K)); // half window length

    // count angles in [theta-half, theta+half] circularly, via sorted lookups
    auto count_leq = [&](double t) -> std::ptrdiff_t {
        return std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
    };
    auto window_count = [&](double theta) -> std::uint64_t {
        double lo = theta - half, hi = theta + half;
        std::uint64_t c = 0;
        // main interval, plus wrapped pieces shifted by +-pi/2
        for (int s = -1; s <= 1; ++s) {
            const double shift = s * kHalfPi;
            double a = lo + shift, b = hi + shift;
            if (b < 0.0 || a > kHalfPi) continue;
            a = std::max(a, 0.0);
            b = std::min(b, std::nextafter(kHalfPi, 0.0));
            if (b < a) continue;
            c += static_cast<std::uint64_t>(count_leq(b) - count_leq(std::nextafter(a, -1.0)));
        }
        return c;
    };

    const double mean = static_cast<double>(n) / static_cast<double>(K);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < M; ++i) {
        const double theta = (static_cast<double>(i) + 0.5) * kHalfPi / static_cast<double>(M);
        const double d = static_cast<double>(window_count(theta)) - mean;
        acc += d * d;
    }
    return acc / static_cast<double>(M);
}

GapStats gap_statistics(const std::vector<double>& angles) {
    std::vector<double> s = angles;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() < 2) throw std::invalid_argument("gap_statistics: need >= 2 distinct angles");
    GapStats g;
    g.min_gap = kHalfPi;
    g.max_gap = 0.0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double d = s[i + 1] - s[i];
        g.min_gap = std::min(g.min_gap, d);
        g.max_gap = std::max(g.max_gap, d);
    }
    const double wrap = s.front() + kHalfPi - s.back();
    g.min_gap = std::min(g.min_gap, wrap);
    g.max_gap = std::max(g.max_gap, wrap);
    return g;
}

std::vector<VarianceReport> figure1_curve(const std::vector<PrimeAngle>& records,
                                          std::uint64_t x,
                                          const std::vector<double>& beta_grid) {
    std::vector<double> angles;
    angles.reserve(records.size());
    for (const PrimeAngle& r : records) angles.push_back(r.angle);
    std::sort(angles.begin(), angles.end());
    const double N = static_cast<double>(angles.size());

    std::vector<double> betas = beta_grid;
    std::sort(betas.begin(), betas.end());

    std::vector<VarianceReport> out;
    out.reserve(betas.size());
    for (double beta : betas) {
        if (!(beta >= 0.0) || beta > 1.5)
            throw std::invalid_argument("figure1_curve: beta must lie in [0, 1.5]");
        auto K = static_cast<std::uint64_t>(std::llround(std::pow(N, beta)));
        if (K < 1) K = 1;
        VarianceReport r = discrete_variance_sorted(angles, K);
        r.x = x;
        out.push_back(r);
    }
    return out;
}

std::vector<VarianceReport> figure1_curve(std::uint64_t x, const std::vector<double>& beta_grid,
                                          bool split_only) {
    if (x < 100) throw std::invalid_argument("figure1_curve: x must be >= 100");
    return figure1_curve(prime_ideal_angles(x, split_only), x, beta_grid);
}

std::string variance_csv(const std::vector<VarianceReport>& rows) {
    std::string out = "x,K,N,beta,mean,variance,ratio\n";
    char line[256];
    for (const VarianceReport& r : rows) {
        std::snprintf(line, sizeof line, "%llu,%llu,%llu,%.12g,%.12g,%.12g,%.12g\n",
                      static_cast<unsigned long long>(r.x),
                      static_cast<unsigned long long>(r.K),
                      static_cast<unsigned long long>(r.N),
                      r.beta_defined ? r.beta : 0.0, r.mean, r.variance, r.ratio);
        out += line;
    }
    return out;
}

} // namespace primeangles
