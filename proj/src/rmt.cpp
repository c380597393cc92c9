#include "primeangles/rmt.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "primeangles/manifest.hpp"
#include "primeangles/rng.hpp"

namespace primeangles::rmt {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int eta(long n) { return n % 2 == 0 ? 1 : 0; }
} // namespace

double exact_moment(const MomentSpec& spec) {
    if (spec.dim < 1) throw std::invalid_argument("exact_moment: dim must be >= 1");
    if (spec.group == Group::Unitary) {
        const long m = spec.m, n = spec.n;
        if (m == 0 && n == 0) return static_cast<double>(spec.dim) * spec.dim;
        if (m != n) return 0.0;
        return std::min<long>(std::labs(m), spec.dim);
    }
    // symplectic: the table covers m, n >= 1; traces are real and symmetric
    if (spec.dim % 2 != 0)
        throw std::invalid_argument("exact_moment: symplectic dimension must be even");
    if (spec.m < 1 || spec.n < 1)
        throw std::invalid_argument("exact_moment: symplectic moments need m, n >= 1");
    const long g = spec.dim / 2;
    const long m = std::min<long>(spec.m, spec.n);
    const long n = std::max<long>(spec.m, spec.n);
    if (m == n) {
        if (n <= g) return static_cast<double>(n + eta(n));
        if (n <= 2 * g) return static_cast<double>(n - 1 + eta(n));
        return static_cast<double>(2 * g);
    }
    if (m + n <= 2 * g) return static_cast<double>(eta(m) * eta(n));
    if (n <= 2 * g) return static_cast<double>(eta(m) * eta(n) - eta(m + n));
    if (n - m <= 2 * g) return static_cast<double>(-eta(m + n));
    return 0.0;
}

namespace {

Eigen::MatrixXcd haar_unitary(int n, CounterRng& rng) {
    Eigen::MatrixXcd a(n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) {
            double g1, g2;
            rng.next_gaussian_pair(g1, g2);
            a(r, c) = std::complex<double>(g1, g2);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        const std::complex<double> d = r(i, i);
        q.col(i) *= d / std::abs(d); // pin the R diagonal positive
    }
    return q;
}

struct Quat { // a + b j with complex a, b;  j c = conj(c) j, j^2 = -1
    std::complex<double> a{0.0, 0.0};
    std::complex<double> b{0.0, 0.0};
};

Quat qmul(const Quat& x, const Quat& y) {
    return {x.a * y.a - x.b * std::conj(y.b), x.a * y.b + x.b * std::conj(y.a)};
}

Quat qconj(const Quat& x) { return {std::conj(x.a), -x.b}; }

double qnorm2(const Quat& x) { return std::norm(x.a) + std::norm(x.b); }

// Haar element of the compact symplectic group in the quaternion model:
// quaternion Ginibre, then modified Gram-Schmidt (two passes) with real
// positive diagonal, embedded as a 2g x 2g complex unitarydimension.
Eigen::MatrixXcd haar_symplectic(int dim, CounterRng& rng) {
    const int g = dim / 2;
    std::vector<std::vector<Quat>> col(g, std::vector<Quat>(g));
    for (int c = 0; c < g; ++c)
        for (int r = 0; r < g; ++r) {
            double g1, g2, g3, g4;
            rng.next_gaussian_pair(g1, g2);
            rng.next_gaussian_pair(g3, g4);
            col[c][r] = {{g1, g2}, {g3, g4}};
        }
    for (int c = 0; c < g; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int p = 0; p < c; ++p) {
                Quat r{{0.0, 0.0}, {0.0, 0.0}};
                for (int i = 0; i < g; ++i) {
                    const Quat t = qmul(qconj(col[p][i]), col[c][i]);
                    r.a += t.a;
                    r.b += t.b;
                }
                for (int i = 0; i < g; ++i) {
                    const Quat t = qmul(col[p][i], r);
                    col[c][i].a -= t.a;
                    col[c][i].b -= t.b;
                }
            }
        }
        double nrm = 0.0;
        for (int i = 0; i < g; ++i) nrm += qnorm2(col[c][i]);
        nrm = std::sqrt(nrm);
        for (int i = 0; i < g; ++i) {
            col[c][i].a /= nrm;
            col[c][i].b /= nrm;
        }
    }
    Eigen::MatrixXcd u(dim, dim);
    for (int c = 0; c < g; ++c)
        for (int r = 0; r < g; ++r) {
            const Quat& q = col[c][r];
            u(2 * r, 2 * c) = q.a;
            u(2 * r, 2 * c + 1) = q.b;
            u(2 * r + 1, 2 * c) = -std::conj(q.b);
            u(2 * r + 1, 2 * c + 1) = std::conj(q.a);
        }
    return u;
}

std::vector<double> eigenphases_of(const Eigen::MatrixXcd& u) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenphase solve failed");
    std::vector<double> out(static_cast<std::size_t>(u.rows()));
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        double ph = std::arg(es.eigenvalues()(i)) / kTwoPi;
        if (ph < 0) ph += 1.0;
        if (ph >= 1.0) ph -= 1.0;
        out[static_cast<std::size_t>(i)] = ph;
    }
    return out;
}

} // namespace

Eigen::MatrixXcd sample_haar_matrix(Group group, int dim, std::uint64_t seed,
                                    std::uint64_t sample_id) {
    if (dim < 1 || dim > 256) throw std::invalid_argument("sample_haar: dim out of range");
    if (group == Group::Symplectic && dim % 2 != 0)
        throw std::invalid_argument("sample_haar: symplectic dimension must be even");
    CounterRng rng(seed, sample_id);
    return group == Group::Unitary ? haar_unitary(dim, rng) : haar_symplectic(dim, rng);
}

std::vector<double> sample_haar(Group group, int dim, std::uint64_t seed,
                                std::uint64_t sample_id) {
    return eigenphases_of(sample_haar_matrix(group, dim, seed, sample_id));
}

WeightModes WeightModes::constant_one() {
    WeightModes w;
    w.ell = {0};
    w.hat = {{1.0, 0.0}};
    return w;
}

double WeightModes::l2() const {
    double acc = 0.0;
    for (const auto& h : hat) acc += std::norm(h);
    return acc;
}

std::complex<double> WeightModes::eval(double gamma) const {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < ell.size(); ++i) {
        const double ph = kTwoPi * static_cast<double>(ell[i]) * gamma;
        acc += hat[i] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return acc;
}

std::complex<double> WeightModes::hat_at(long l) const {
    for (std::size_t i = 0; i < ell.size(); ++i)
        if (ell[i] == l) return hat[i];
    return {0.0, 0.0};
}

LinearStatistic linear_statistic(const std::vector<double>& eigenphases, long n,
                                 const WeightModes& w) {
    LinearStatistic out{{0.0, 0.0}, {0.0, 0.0}};
    for (double gamma : eigenphases) {
        const double ph = kTwoPi * static_cast<double>(n) * gamma;
        out.direct += w.eval(gamma) * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    for (std::size_t i = 0; i < w.ell.size(); ++i) {
        const long m = n + w.ell[i];
        std::complex<double> tr(0.0, 0.0);
        for (double gamma : eigenphases) {
            const double ph = kTwoPi * static_cast<double>(m) * gamma;
            tr += std::complex<double>(std::cos(ph), std::sin(ph));
        }
        out.fourier += w.hat[i] * tr;
    }
    return out;
}

namespace {

// per-sample values in sample order, then one compensated reduction:
// bitwise identical for any thread count
template <class Fn>
std::pair<double, double> mc_run(std::uint64_t samples, unsigned threads, Fn&& per_sample) {
    std::vector<double> vals(samples);
    if (threads == 0) threads = worker_threads();
    threads = std::min<unsigned>(threads, 64);
    if (threads <= 1 || samples < 256) {
        for (std::uint64_t i = 0; i < samples; ++i) vals[i] = per_sample(i);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (samples + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t lo = t * chunk, hi = std::min(samples, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::uint64_t i = lo; i < hi; ++i) vals[i] = per_sample(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    double sum = 0.0, comp = 0.0;
    for (double v : vals) { // Kahan
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const double mean = sum / static_cast<double>(samples);
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= static_cast<double>(samples);
    const double se = std::sqrt(var / static_cast<double>(samples));
    return {mean, se};
}

} // namespace

Prop54Result prop54_check(Group group, int dim, long n, const WeightModes& w,
                          std::uint64_t samples, std::uint64_t seed, unsigned threads) {
    if (n < 1) throw std::invalid_argument("prop54_check: n must be >= 1");
    Prop54Result out;
    out.samples = samples;
    out.prediction = std::min<double>(static_cast<double>(n), dim) * w.l2();

    for (std::size_t i = 0; i < w.ell.size(); ++i)
        for (std::size_t j = 0; j < w.ell.size(); ++j) {
            const long mi = n + w.ell[i], mj = n + w.ell[j];
            if (group == Group::Symplectic && (mi < 1 || mj < 1))
                throw std::invalid_argument("prop54_check: symplectic needs n above the mode span");
            const double mom = exact_moment({group, dim, static_cast<int>(mi), static_cast<int>(mj)});
            out.exact += (w.hat[i] * std::conj(w.hat[j])).real() * mom;
        }

    if (samples > 0) {
        auto [mean, se] = mc_run(samples, threads, [&](std::uint64_t i) {
            const auto phases = sample_haar(group, dim, seed, i);
            return std::norm(linear_statistic(phases, n, w).direct);
        });
        out.mc_mean = mean;
        out.mc_se = se;
    }
    return out;
}

MomentMc moment_mc(const MomentSpec& spec, std::uint64_t samples, std::uint64_t seed,
                   unsigned threads) {
    auto [mean, se] = mc_run(samples, threads, [&](std::uint64_t i) {
        const auto phases = sample_haar(spec.group, spec.dim, seed, i);
        std::complex<double> trm(0.0, 0.0), trn(0.0, 0.0);
        for (double gamma : phases) {
            trm += std::complex<double>(std::cos(kTwoPi * spec.m * gamma),
                                        std::sin(kTwoPi * spec.m * gamma));
            trn += std::complex<double>(std::cos(kTwoPi * spec.n * gamma),
                                        std::sin(kTwoPi * spec.n * gamma));
        }
        return (trm * std::conj(trn)).real();
    });
    return {mean, se};
}

const char* group_name(Group g) { return g == Group::Unitary ? "u" : "usp"; }

SweepSpec sweep_spec(double logK, double alpha, WeightModes w) {
    SweepSpec s;
    s.alpha = alpha;
    s.N = static_cast<int>(std::llround(logK / std::numbers::pi));
    s.n = std::lround(0.5 * alpha * logK / std::numbers::pi);
    s.w = std::move(w);
    return s;
}

std::vector<DictionaryRow> conjecture53_curve(double logK, const std::vector<double>& alphas,
                                              const WeightModes& w) {
    std::vector<DictionaryRow> out;
    out.reserve(alphas.size());
    for (double alpha : alphas) {
        const SweepSpec s = sweep_spec(logK, alpha, w);
        DictionaryRow row;
        row.alpha = alpha;
        row.N = s.N;
        row.n = s.n;
        row.prediction = std::min<double>(static_cast<double>(s.n), s.N) * w.l2();
        row.normalized = row.prediction / (logK / std::numbers::pi * w.l2());
        out.push_back(row);
    }
    return out;
}

std::string rmt_csv(const std::vector<RmtRow>& rows) {
    std::string out = "group,dim,n,samples,mc_mean,mc_se,exact,prediction\n";
    char line[256];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%s,%d,%ld,%llu,%.12g,%.12g,%.12g,%.12g\n",
                      group_name(r.group), r.dim, r.n,
                      static_cast<unsigned long long>(r.samples), r.mc_mean, r.mc_se, r.exact,
                      r.prediction);
        out += line;
    }
    return out;
}

} // namespace primeangles::rmt
