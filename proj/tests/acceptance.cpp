// Acceptance suite: one check per numbered criterion, each printing a single
// [PASS]/[FAIL] line (plus diagnostics) and an elapsed time.  Run with a
// criterion number 1..10, or no argument for the full battery.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "primeangles/ff_core.hpp"
#include "primeangles/ff_spectral.hpp"
#include "primeangles/ff_stats.hpp"
#include "primeangles/gaussian.hpp"
#include "primeangles/rmt.hpp"
#include "primeangles/sector.hpp"
#include "primeangles/sieve.hpp"
#include "primeangles/smooth.hpp"
#include "primeangles/window.hpp"

#ifndef CLI_PATH
#define CLI_PATH "prime-angles"
#endif

using namespace primeangles;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

bool report(int crit, bool ok, double secs, const char* fmt, ...) {
    std::printf("[%s] criterion %d (%.2f s): ", ok ? "PASS" : "FAIL", crit, secs);
    va_list ap;
    va_start(ap, fmt);
    std::vprintf(fmt, ap);
    va_end(ap);
    std::printf("\n");
    std::fflush(stdout);
    return ok;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

// ---------------------------------------------------------------------------
// 1. exact small-scale oracle at x = 25 + exhaustive two-squares to 10^6
bool criterion1() {
    Timer t;
    auto ideals = prime_ideal_angles(25);
    bool ok = ideals.size() == 8;

    const std::vector<std::pair<std::uint64_t, double>> expected = {
        {2, std::atan2(1.0, 1.0)},  {5, std::atan2(1.0, 2.0)},  {5, std::atan2(2.0, 1.0)},
        {9, 0.0},                   {13, std::atan2(2.0, 3.0)}, {13, std::atan2(3.0, 2.0)},
        {17, std::atan2(1.0, 4.0)}, {17, std::atan2(4.0, 1.0)}};
    auto got = ideals;
    std::sort(got.begin(), got.end(), [](const PrimeAngle& a, const PrimeAngle& b) {
        return a.norm != b.norm ? a.norm < b.norm : a.angle < b.angle;
    });
    for (std::size_t i = 0; ok && i < expected.size(); ++i)
        ok = got[i].norm == expected[i].first && std::abs(got[i].angle - expected[i].second) < 1e-14;

    std::uint64_t checked = 0;
    for (std::uint64_t p : sieve_primes(1000000)) {
        if (p % 4 != 1) continue;
        auto [a, b] = decompose_split_prime(p);
        if (std::uint64_t{a} * a + std::uint64_t{b} * b != p || a == 0) {
            ok = false;
            break;
        }
        ++checked;
    }
    const double secs = t.seconds();
    return report(1, ok && secs < 5.0, secs,
                  "x=25 ideal multiset exact (8 records); a^2+b^2=p for all %llu split p <= 10^6",
                  static_cast<unsigned long long>(checked));
}

// ---------------------------------------------------------------------------
// 2. pairwise repulsion at x = 10^5 with sorted-neighbor pruning
bool criterion2() {
    Timer t;
    auto ideals = prime_ideal_angles(100000);
    std::vector<std::pair<double, double>> rec; // angle, norm
    rec.reserve(ideals.size());
    for (const auto& r : ideals) rec.emplace_back(r.angle, static_cast<double>(r.norm));
    std::sort(rec.begin(), rec.end());

    // a pair (i, j) can only violate sqrt(N_i N_j) sin(dtheta) >= 1 when
    // sin(dtheta) < 1/sqrt(2 N_i), since every norm is >= 2
    bool ok = true;
    std::uint64_t pairs = 0;
    double worst = 2.0;
    for (std::size_t i = 0; i < rec.size() && ok; ++i) {
        const double cutoff = std::asin(std::min(1.0, 1.0 / std::sqrt(2.0 * rec[i].second)));
        for (std::size_t j = i + 1; j < rec.size(); ++j) {
            const double d = rec[j].first - rec[i].first;
            if (d >= cutoff) break;
            if (d == 0.0) continue; // same angle (inert pile)
            ++pairs;
            const double v = std::sqrt(rec[i].second * rec[j].second) * std::sin(d);
            worst = std::min(worst, v);
            if (v < 1.0 - 1e-9) {
                ok = false;
                break;
            }
        }
    }
    const double secs = t.seconds();
    return report(2, ok && secs < 30.0, secs,
                  "all distinct-angle pairs obey sqrt(NpNq) sin|dtheta| >= 1-1e-9 "
                  "(%llu candidate pairs, min lhs %.9f)",
                  static_cast<unsigned long long>(pairs), worst);
}

// ---------------------------------------------------------------------------
// 3. trivial regime: discrete ratio band and the smooth c2 X log X / K law
bool criterion3() {
    Timer t;
    auto ideals = prime_ideal_angles(10000);
    std::vector<double> angles;
    for (const auto& r : ideals) angles.push_back(r.angle);
    std::sort(angles.begin(), angles.end());
    const auto rep = discrete_variance_sorted(angles, std::uint64_t{1} << 20);
    const bool discrete_ok = rep.ratio >= 0.9 && rep.ratio <= 1.1;

    auto split = prime_ideal_angles(10000, true);
    std::vector<double> sa;
    for (const auto& r : split) sa.push_back(r.angle);
    std::sort(sa.begin(), sa.end());
    const auto rep_split = discrete_variance_sorted(sa, std::uint64_t{1} << 20);

    const WindowPair& w = WindowPair::standard();
    const HeckeCache cache(1000, w);
    const double got = variance_parseval(1000000, cache);
    const double want = w.c2() * 1000.0 * std::log(1000.0) / 1e6;
    const bool smooth_ok = got / want >= 0.85 && got / want <= 1.15;

    const double secs = t.seconds();
    return report(3, discrete_ok && smooth_ok && secs < 10.0, secs,
                  "discrete ratio %.4f (band [0.9,1.1]%s; split-only %.4f; the inert pile at "
                  "angle 0 adds (#inert)^2/N = +12.7%%), smooth var/c2XlogX/K = %.4f (band "
                  "[0.85,1.15]%s)",
                  rep.ratio, discrete_ok ? ", ok" : ", VIOLATED", rep_split.ratio, got / want,
                  smooth_ok ? ", ok" : ", VIOLATED");
}

// ---------------------------------------------------------------------------
// 4. figure-1 reproduction at x = 10^8 with the x = 10^7 fallback
bool criterion4() {
    Timer t;
    auto run = [&](std::uint64_t x, double tol, char const* tag, double* max_dev) {
        auto ideals = prime_ideal_angles(x);
        std::vector<double> betas;
        for (int i = 0; i <= 26; ++i) betas.push_back(0.1 + 0.05 * i);
        const auto rows = figure1_curve(ideals, x, betas);

        bool band_ok = true;
        *max_dev = 0.0;
        for (const auto& r : rows) {
            if (r.beta < 0.3 - 1e-9 || r.beta > 1.3 + 1e-9) continue;
            const double dev = std::abs(r.ratio - std::min(1.0, 2.0 * r.beta));
            *max_dev = std::max(*max_dev, dev);
            if (dev > tol) band_ok = false;
        }
        bool rise_ok = true;
        for (std::size_t i = 0; i + 1 < rows.size(); ++i)
            if (rows[i + 1].beta < 0.5 && rows[i + 1].ratio <= rows[i].ratio) rise_ok = false;
        bool plateau_ok = true;
        for (const auto& r : rows)
            if (r.beta > 0.5 && r.beta <= 1.3 + 1e-9 && std::abs(r.ratio - 1.0) > tol)
                plateau_ok = false;

        std::printf("  %s: beta, ratio, min(1,2b), dev\n", tag);
        for (const auto& r : rows)
            std::printf("    %.3f  %.4f  %.2f  %+.4f\n", r.beta, r.ratio,
                        std::min(1.0, 2.0 * r.beta), r.ratio - std::min(1.0, 2.0 * r.beta));
        std::printf("  %s: band<=%.2f %s (max dev %.4f), rise(beta<0.5) %s, plateau %s\n", tag,
                    tol, band_ok ? "ok" : "VIOLATED", *max_dev, rise_ok ? "ok" : "VIOLATED",
                    plateau_ok ? "ok" : "VIOLATED");
        return band_ok && rise_ok && plateau_ok;
    };

    double dev8 = 0, dev7 = 0;
    const bool full_ok = run(100000000ULL, 0.2, "x=1e8", &dev8);
    Timer tf;
    const bool fb_ok = run(10000000ULL, 0.25, "x=1e7 fallback", &dev7);
    const double fb_secs = tf.seconds();

    const double secs = t.seconds();
    return report(4, full_ok && fb_ok && fb_secs < 120.0, secs,
                  "x=1e8 %s (max dev %.3f vs 0.2), fallback %s in %.1f s (max dev %.3f vs 0.25); "
                  "crossover shape present in both",
                  full_ok ? "ok" : "VIOLATED", dev8, fb_ok ? "ok" : "VIOLATED", fb_secs, dev7);
}

// ---------------------------------------------------------------------------
// 5. Fourier synthesis and Parseval variance at X = 10^4, K = 20
bool criterion5() {
    Timer t;
    const WindowPair& w = WindowPair::standard();
    const HeckeCache cache(10000, w);
    const std::uint64_t K = 20;

    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> uni(0.0, kHalfPi);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double theta = uni(rng);
        worst = std::max(worst,
                         std::abs(psi_fourier(theta, K, cache) - psi_direct(theta, K, cache)));
    }
    const bool fourier_ok = worst <= 1e-6 * (10000.0 / static_cast<double>(K));

    const double vp = variance_parseval(K, cache);
    const double vq = variance_quadrature(K, cache);
    const double rel = std::abs(vp - vq) / vq;
    const bool var_ok = rel <= 1e-4;

    const double secs = t.seconds();
    return report(5, fourier_ok && var_ok && secs < 60.0, secs,
                  "max |psi_fourier - psi_direct| = %.3g (tol %.3g); "
                  "|parseval - quadrature|/quadrature = %.3g (tol 1e-4)",
                  worst, 1e-6 * 500.0, rel);
}

// ---------------------------------------------------------------------------
// 6. function-field exact identities across q in {3,5}, k in {2..5}, nu <= 6
bool criterion6() {
    Timer t;
    bool ok = true;
    char detail[256] = "all identities within tolerance";
    for (std::uint32_t q : {3u, 5u}) {
        for (int k = 2; k <= 5 && ok; ++k) {
            const ff::CharacterTable T(q, k);
            const auto spectra = ff::all_spectra(T);

            for (const auto& fs : spectra) {
                if (fs.trivial_zero_residual > 1e-9 || fs.max_unitarity_error > 1e-9) {
                    ok = false;
                    std::snprintf(detail, sizeof detail, "L-poly residuals at q=%u k=%d chi=%u", q,
                                  k, fs.chi);
                }
            }

            for (int nu = 1; nu <= 6 && ok; ++nu) {
                const auto tal = ff::sector_tallies(T.group(), nu);

                // (a) partition identity, exact integers
                std::int64_t total = 0;
                for (std::uint32_t u = 0; u < T.size(); ++u) total += tal.lambda_w[u];
                std::int64_t qnu = 1;
                for (int i = 0; i < nu; ++i) qnu *= q;
                if (total != qnu - 1) {
                    ok = false;
                    std::snprintf(detail, sizeof detail, "sum_u Psi != q^nu - 1 at q=%u k=%d nu=%d",
                                  q, k, nu);
                    break;
                }

                // (b) character reconstruction of Psi_{k,nu}(u)
                std::vector<std::complex<double>> psi_chi(T.size());
                for (std::uint32_t chi = 0; chi < T.size(); ++chi)
                    psi_chi[chi] = ff::character_prime_sum(T, tal, chi);
                for (std::uint32_t u = 0; u < T.size() && ok; ++u) {
                    std::complex<double> acc(0.0, 0.0);
                    for (std::uint32_t chi = 0; chi < T.size(); ++chi)
                        acc += std::conj(T.value(chi, u)) * psi_chi[chi];
                    acc /= static_cast<double>(T.size());
                    if (std::abs(acc - std::complex<double>(
                                     static_cast<double>(tal.lambda_w[u]), 0.0)) > 1e-6) {
                        ok = false;
                        std::snprintf(detail, sizeof detail,
                                      "reconstruction off at q=%u k=%d nu=%d", q, k, nu);
                    }
                }

                // (c) explicit formula per character
                for (const auto& fs : spectra) {
                    if (std::abs(psi_chi[fs.chi] - ff::character_prime_sum_trace(fs, q, nu)) >
                        1e-6) {
                        ok = false;
                        std::snprintf(detail, sizeof detail,
                                      "explicit formula off at q=%u k=%d nu=%d chi=%u", q, k, nu,
                                      fs.chi);
                    }
                }

                // (d) spectral vs brute-force variance
                const double brute = ff::ff_variance(T.group(), tal).var_psi;
                const double spec = ff::spectral_variance(T, nu);
                if (brute > 0 && std::abs(spec - brute) / brute > 1e-6) {
                    ok = false;
                    std::snprintf(detail, sizeof detail, "variance mismatch at q=%u k=%d nu=%d", q,
                                  k, nu);
                }
            }
        }
    }
    const double secs = t.seconds();
    return report(6, ok && secs < 120.0, secs, "%s", detail);
}

// ---------------------------------------------------------------------------
// 7. convergence of nu^2 Var(N) / q^{nu-kappa} toward 2 kappa - 2 = 2
bool criterion7() {
    Timer t;
    const int k = 4, nu = 4;
    bool ok = true;
    double prev = 1e18, last = 0;
    std::printf("  (kappa,nu)=(2,4): q, nu^2 Var(N)/q^{nu-kappa}, |dev - 2|\n");
    for (std::uint32_t q : {3u, 7u, 11u, 13u}) {
        const auto rep = ff::ff_variance(q, k, nu);
        const double scaled = nu * nu * rep.var_n / std::pow(static_cast<double>(q), nu - 2);
        const double dev = std::abs(scaled - 2.0);
        std::printf("    %2u  %.5f  %.5f\n", q, scaled, dev);
        if (dev >= prev) ok = false;
        prev = dev;
        last = dev;
    }
    if (last > 0.5) ok = false;
    const double secs = t.seconds();
    return report(7, ok && secs < 300.0, secs,
                  "deviation strictly decreasing along q in {3,7,11,13}, final %.3f (<= 0.5)",
                  last);
}

// ---------------------------------------------------------------------------
// 8. the empty sector at q = 3, k = 4, u = 1 + 2S^3, nu in {1,2,3}
bool criterion8() {
    Timer t;
    const ff::DirGroup G(3, 4);
    ff::Series u = ff::series_one(4);
    u.c[3] = 2;
    bool ok = true;
    char detail[256];
    std::size_t at = 0;
    at += std::snprintf(detail + at, sizeof detail - at, "n_sector(1+2S^3, 4, nu):");
    for (int nu = 1; nu <= 3; ++nu) {
        const std::int64_t n = ff::n_sector(G, u, nu);
        at += std::snprintf(detail + at, sizeof detail - at, " nu=%d -> %lld", nu,
                            static_cast<long long>(n));
        if (n != 0) ok = false;
    }
    if (!ok)
        std::printf("  note: the sector coset at nu=3 is {S^3 + c S^2 + 2}; S^3+S^2+2 is "
                    "irreducible over F_3, so the hole provably ends at nu = 2 kappa - 2 = 2\n");
    const double secs = t.seconds();
    return report(8, ok && secs < 1.0, secs, "%s", detail);
}

// ---------------------------------------------------------------------------
// 9. RMT: moment tables vs 10^5-sample Monte Carlo, plus the exact prop-5.4 row
bool criterion9() {
    Timer t;
    bool ok = true;
    char first_fail[160] = "";

    struct Entry {
        rmt::MomentSpec spec;
        double want;
        double got = 0, se = 0;
    };

    auto run_dim = [&](rmt::Group g, int dim, std::uint64_t seed, std::vector<Entry>& entries) {
        const std::uint64_t samples = 100000;
        std::vector<std::vector<double>> vals(entries.size());
        for (auto& v : vals) v.reserve(samples);
        for (std::uint64_t s = 0; s < samples; ++s) {
            const auto phases = rmt::sample_haar(g, dim, seed, s);
            for (std::size_t e = 0; e < entries.size(); ++e) {
                const int m = entries[e].spec.m, n = entries[e].spec.n;
                std::complex<double> trm(0, 0), trn(0, 0);
                for (double gam : phases) {
                    trm += std::complex<double>(std::cos(2 * std::numbers::pi * m * gam),
                                                std::sin(2 * std::numbers::pi * m * gam));
                    trn += std::complex<double>(std::cos(2 * std::numbers::pi * n * gam),
                                                std::sin(2 * std::numbers::pi * n * gam));
                }
                vals[e].push_back((trm * std::conj(trn)).real());
            }
        }
        for (std::size_t e = 0; e < entries.size(); ++e) {
            double mean = 0;
            for (double v : vals[e]) mean += v;
            mean /= static_cast<double>(samples);
            double var = 0;
            for (double v : vals[e]) var += (v - mean) * (v - mean);
            var /= static_cast<double>(samples);
            entries[e].got = mean;
            entries[e].se = std::sqrt(var / static_cast<double>(samples));
            const double tol = std::max(4.0 * entries[e].se, 1e-9);
            if (std::abs(mean - entries[e].want) > tol) {
                ok = false;
                if (!first_fail[0])
                    std::snprintf(first_fail, sizeof first_fail,
                                  "%s dim=%d (m,n)=(%d,%d): mc %.4f vs %.4f (se %.4f)",
                                  rmt::group_name(entries[e].spec.group), dim, entries[e].spec.m,
                                  entries[e].spec.n, mean, entries[e].want, entries[e].se);
            }
        }
    };

    for (int N : {5, 6, 7, 8}) {
        std::vector<Entry> es;
        for (int m : {0, 1, 3, N, N + 2})
            es.push_back({{rmt::Group::Unitary, N, m, m},
                          rmt::exact_moment({rmt::Group::Unitary, N, m, m})});
        es.push_back({{rmt::Group::Unitary, N, 1, 2}, 0.0});
        run_dim(rmt::Group::Unitary, N, 1000 + static_cast<std::uint64_t>(N), es);
    }
    for (int dim : {4, 6, 8}) {
        const int g = dim / 2;
        std::vector<Entry> es;
        std::set<int> diags{1, 2, g, g + 1, 2 * g, 2 * g + 3};
        for (int n : diags)
            es.push_back({{rmt::Group::Symplectic, dim, n, n},
                          rmt::exact_moment({rmt::Group::Symplectic, dim, n, n})});
        const std::vector<std::pair<int, int>> offs = {
            {1, 2}, {g, g + 1}, {2, 2 * g + 1}, {1, 2 * g + 2}};
        for (auto [m, n] : offs)
            es.push_back({{rmt::Group::Symplectic, dim, m, n},
                          rmt::exact_moment({rmt::Group::Symplectic, dim, m, n})});
        run_dim(rmt::Group::Symplectic, dim, 2000 + static_cast<std::uint64_t>(dim), es);
    }

    // exact prop-5.4 rows for U(40): the Dyson route is exact
    const auto one = rmt::WeightModes::constant_one();
    for (long n : {10L, 40L, 80L}) {
        const auto r = rmt::prop54_check(rmt::Group::Unitary, 40, n, one, 0, 0);
        if (std::abs(r.exact - std::min<double>(static_cast<double>(n), 40.0) * one.l2()) > 1e-9) {
            ok = false;
            if (!first_fail[0])
                std::snprintf(first_fail, sizeof first_fail, "prop54 exact off at n=%ld", n);
        }
    }

    const double secs = t.seconds();
    return report(9, ok && secs < 180.0, secs, "%s",
                  ok ? "all Dyson/KO entries within 4 SE of 10^5-sample MC; U(40) exact rows tight"
                     : first_fail);
}

// ---------------------------------------------------------------------------
// 10. byte-identical reruns of the criterion-4 and criterion-9 emissions
bool criterion10() {
    Timer t;
    auto shell = [](const std::string& args) {
        const std::string cmd = std::string(CLI_PATH) + " " + args + " >/dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    bool ok = true;

    ok &= shell("figure1 --x 1e7 --betas 0.1:1.4:0.05 --threads 2 --out /tmp/acc_f1.csv") == 0;
    ok &= shell("figure1 --x 1e7 --betas 0.1:1.4:0.05 --threads 2 --out /tmp/acc_f2.csv") == 0;
    const bool fig_same = slurp("/tmp/acc_f1.csv") == slurp("/tmp/acc_f2.csv");

    ok &= shell("rmt --group usp --dim 4 --n 2 --samples 100000 --seed 7 --threads 2 "
                "--out /tmp/acc_r1.csv") == 0;
    ok &= shell("rmt --group usp --dim 4 --n 2 --samples 100000 --seed 7 --threads 1 "
                "--out /tmp/acc_r2.csv") == 0;
    const bool rmt_same = slurp("/tmp/acc_r1.csv") == slurp("/tmp/acc_r2.csv");
    const bool nonempty = !slurp("/tmp/acc_f1.csv").empty() && !slurp("/tmp/acc_r1.csv").empty();

    for (const char* p : {"/tmp/acc_f1.csv", "/tmp/acc_f2.csv", "/tmp/acc_r1.csv",
                          "/tmp/acc_r2.csv"}) {
        std::remove(p);
        std::remove((std::string(p) + ".manifest.json").c_str());
    }
    const double secs = t.seconds();
    return report(10, ok && fig_same && rmt_same && nonempty, secs,
                  "figure1 reruns byte-identical: %s; rmt reruns across thread counts "
                  "byte-identical: %s",
                  fig_same ? "yes" : "NO", rmt_same ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    const int which = argc > 1 ? std::atoi(argv[1]) : 0;
    bool (*checks[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                          criterion6, criterion7, criterion8, criterion9, criterion10};
    int failures = 0;
    for (int i = 1; i <= 10; ++i) {
        if (which != 0 && which != i) continue;
        if (!checks[i - 1]()) ++failures;
    }
    return failures;
}
