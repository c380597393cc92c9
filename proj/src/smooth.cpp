#include "primeangles/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace primeangles {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

double window_fk(double theta, std::uint64_t K, const WindowPair& w) {
    if (K < 1) throw std::invalid_argument("window_fk: K must be >= 1");
    const double scale = static_cast<double>(K) / kHalfPi;
    const double u = theta * scale; // f(u - jK), support |u - jK| < 1
    const auto jlo = static_cast<long>(std::floor((u - 1.0) / static_cast<double>(K)));
    const auto jhi = static_cast<long>(std::ceil((u + 1.0) / static_cast<double>(K)));
    double acc = 0.0;
    for (long j = jlo; j <= jhi; ++j) acc += w.f(u - static_cast<double>(j) * K);
    return acc;
}

HeckeCache::HeckeCache(const std::vector<PrimeAngle>& ideals, std::uint64_t X,
                       const WindowPair& w, bool primes_only)
    : X_(X), w_(&w) {
    std::vector<std::pair<double, double>> aw;
    const double xd = static_cast<double>(X);
    for (const PrimeAngle& pa : ideals) {
        if (pa.norm > X) continue;
        const double lam = std::log(static_cast<double>(pa.norm));
        std::uint64_t n = pa.norm;
        for (unsigned r = 1;; ++r) {
            const double ph = w.phi(static_cast<double>(n) / xd);
            if (ph > 0.0)
                aw.emplace_back(std::fmod(r * pa.angle, kHalfPi), lam * ph);
            if (primes_only || n > X / pa.norm) break;
            n *= pa.norm;
        }
    }
    std::sort(aw.begin(), aw.end());
    ang_.reserve(aw.size());
    wgt_.reserve(aw.size());
    for (auto& [a, v] : aw) {
        ang_.push_back(a);
        wgt_.push_back(v);
        wsum_ += v;
    }
    tcache_.push_back(std::complex<double>(wsum_, 0.0));
}

HeckeCache::HeckeCache(std::uint64_t X, const WindowPair& w, bool primes_only)
    : HeckeCache(prime_ideal_angles(X), X, w, primes_only) {}

std::complex<double> HeckeCache::hecke(long k) const {
    const long ak = std::labs(k);
    if (static_cast<std::size_t>(ak) < tcache_.size())
        return k >= 0 ? tcache_[ak] : std::conj(tcache_[ak]);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < ang_.size(); ++i) {
        const double ph = 4.0 * ak * ang_[i];
        acc += wgt_[i] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return k >= 0 ? acc : std::conj(acc);
}

const std::vector<std::complex<double>>& HeckeCache::hecke_upto(long kmax) const {
    if (kmax < 0) kmax = 0;
    if (tcache_.size() > static_cast<std::size_t>(kmax)) return tcache_;
    tcache_.assign(static_cast<std::size_t>(kmax) + 1, {0.0, 0.0});
    for (std::size_t i = 0; i < ang_.size(); ++i) {
        const double w = wgt_[i];
        const double ph = 4.0 * ang_[i];
        const std::complex<double> step(std::cos(ph), std::sin(ph));
        std::complex<double> rot(1.0, 0.0);
        for (long k = 0; k <= kmax; ++k) {
            tcache_[static_cast<std::size_t>(k)] += w * rot;
            rot *= step;
        }
    }
    return tcache_;
}

std::complex<double> hecke_sum(long k, const HeckeCache& cache) { return cache.hecke(k); }

double psi_direct(double theta, std::uint64_t K, const HeckeCache& cache) {
    if (K < 1) throw std::invalid_argument("psi_direct: K must be >= 1");
    const auto& ang = cache.angles();
    const auto& wgt = cache.weights();
    const double scale = static_cast<double>(K) / kHalfPi;
    const double halfwin = kHalfPi / static_cast<double>(K);
    double acc = 0.0;
    for (int j = -1; j <= 1; ++j) {
        const double center = theta + j * kHalfPi;
        const double lo = center - halfwin, hi = center + halfwin;
        if (hi < 0.0 || lo > kHalfPi) continue;
        auto it = std::lower_bound(ang.begin(), ang.end(), lo);
        for (; it != ang.end() && *it < hi; ++it) {
            const std::size_t i = static_cast<std::size_t>(it - ang.begin());
            acc += wgt[i] * cache.window().f((*it - center) * scale);
        }
    }
    return acc;
}

double psi_fourier(double theta, std::uint64_t K, const HeckeCache& cache, long kmax) {
    if (K < 1) throw std::invalid_argument("psi_fourier: K must be >= 1");
    const WindowPair& w = cache.window();
    if (kmax < 0) kmax = w.kmax(K);
    const auto& T = cache.hecke_upto(kmax);
    const double invK = 1.0 / static_cast<double>(K);
    double acc = w.fhat(0.0) * invK * T[0].real();
    const double ph = -4.0 * theta;
    const std::complex<double> step(std::cos(ph), std::sin(ph));
    std::complex<double> rot = step;
    for (long k = 1; k <= kmax; ++k) {
        const double fh = w.fhat(static_cast<double>(k) * invK);
        if (fh != 0.0) acc += 2.0 * (rot * T[static_cast<std::size_t>(k)]).real() * fh * invK;
        rot *= step;
    }
    return acc;
}

namespace {

// Var(psi) through the periodized autocorrelation of F_K: identical to the
// spectral sum by Parseval, cost independent of kmax.
double variance_autocorr(std::uint64_t K, const HeckeCache& cache) {
    const WindowPair& w = cache.window();
    const auto& ang = cache.angles();
    const auto& wgt = cache.weights();
    const std::size_t n = ang.size();
    const double scale = static_cast<double>(K) / kHalfPi;
    const double invK = 1.0 / static_cast<double>(K);
    const double reach = 2.0 / scale; // autocorr support in angle units

    double acc = 0.0;
    if (reach >= kHalfPi / 2) {
        // windows overlap several periods: plain double loop with the full
        // periodized autocorrelation
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double d = ang[i] - ang[j];
                double g = 0.0;
                for (int s = -1; s <= 1; ++s) g += w.autocorr((d - s * kHalfPi) * scale);
                acc += wgt[i] * wgt[j] * g * invK;
            }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            acc += wgt[i] * wgt[i] * w.autocorr(0.0) * invK;
            for (std::size_t j = i + 1; j < n && ang[j] - ang[i] < reach; ++j)
                acc += 2.0 * wgt[i] * wgt[j] * w.autocorr((ang[j] - ang[i]) * scale) * invK;
        }
        // wrap-around pairs across the pi/2 seam
        for (std::size_t i = 0; i < n && ang[i] < reach; ++i)
            for (std::size_t j = n; j-- > 0 && ang[i] + kHalfPi - ang[j] < reach;)
                acc += 2.0 * wgt[i] * wgt[j] * w.autocorr((ang[i] + kHalfPi - ang[j]) * scale) * invK;
    }
    const double mean = w.fhat(0.0) * invK * cache.weight_sum();
    return acc - mean * mean;
}

} // namespace

double variance_parseval(std::uint64_t K, const HeckeCache& cache, long kmax) {
    if (K < 1) throw std::invalid_argument("variance_parseval: K must be >= 1");
    const WindowPair& w = cache.window();
    if (kmax < 0) kmax = w.kmax(K);
    const double cost = static_cast<double>(kmax) * static_cast<double>(cache.size());
    if (cost > 2e8) return variance_autocorr(K, cache);

    const auto& T = cache.hecke_upto(kmax);
    const double invK = 1.0 / static_cast<double>(K);
    double acc = 0.0;
    for (long k = kmax; k >= 1; --k) {
        const double fh = w.fhat(static_cast<double>(k) * invK) * invK;
        acc += 2.0 * fh * fh * std::norm(T[static_cast<std::size_t>(k)]);
    }
    return acc;
}

double variance_quadrature(std::uint64_t K, const HeckeCache& cache, std::uint64_t M) {
    if (K < 1) throw std::invalid_argument("variance_quadrature: K must be >= 1");
    if (M == 0) M = std::max<std::uint64_t>(10000, 20 * K);
    if (M < K) throw std::invalid_argument("variance_quadrature: need M >= K");
    double s1 = 0.0, s2 = 0.0;
    for (std::uint64_t i = 0; i < M; ++i) {
        const double theta = (static_cast<double>(i) + 0.5) * kHalfPi / static_cast<double>(M);
        const double v = psi_direct(theta, K, cache);
        s1 += v;
        s2 += v * v;
    }
    const double m = s1 / static_cast<double>(M);
    return s2 / static_cast<double>(M) - m * m;
}

Conjecture51 conjecture51_ratio(std::uint64_t K, const HeckeCache& cache) {
    if (K < 2) throw std::invalid_argument("conjecture51_ratio: K must be >= 2");
    Conjecture51 out;
    out.measured = variance_parseval(K, cache);
    const double X = static_cast<double>(cache.X());
    out.predicted = cache.window().c2() * (X / static_cast<double>(K)) *
                    std::min(std::log(X), 2.0 * std::log(static_cast<double>(K)));
    return out;
}

std::string smooth_variance_csv(const std::vector<SmoothVarianceRow>& rows) {
    std::string out = "X,K,kmax,var_parseval,var_quadrature,predicted_c51,ratio\n";
    char line[256];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%llu,%llu,%ld,%.12g,%.12g,%.12g,%.12g\n",
                      static_cast<unsigned long long>(r.X),
                      static_cast<unsigned long long>(r.K), r.kmax, r.var_parseval,
                      r.var_quadrature, r.predicted_c51, r.ratio);
        out += line;
    }
    return out;
}

} // namespace primeangles
