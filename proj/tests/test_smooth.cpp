#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "primeangles/gaussian.hpp"
#include "primeangles/smooth.hpp"
#include "primeangles/window.hpp"

#include "oracles.hpp"

using namespace primeangles;

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;

// direct quadrature of fhat at one point, independent of the table
double fhat_quadrature(const WindowPair& w, double y, int n = 200000) {
    double acc = 0.0;
    const double h = 2.0 / n;
    for (int i = 0; i < n; ++i) {
        const double x = -1.0 + (i + 0.5) * h;
        acc += w.f(x) * std::cos(2.0 * std::numbers::pi * x * y);
    }
    return acc * h;
}
} // namespace

TEST_CASE("window integrals and transform table") {
    const WindowPair& w = WindowPair::standard();
    CHECK(w.int_f() > 0);
    CHECK(w.int_phi() > 0);
    CHECK(w.c2() > 0);
    CHECK(w.f(0.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(w.f(1.0) == 0.0);
    CHECK(w.f(-0.5) == w.f(0.5));
    CHECK(w.phi(0.25) == 0.0);
    CHECK(w.phi(1.0) == 0.0);
    CHECK(w.phi(0.625) == doctest::Approx(std::exp(-1.0 / (0.375 * 0.375))));

    // fhat(0) = int f; table vs direct quadrature at awkward points
    CHECK(w.fhat(0.0) == doctest::Approx(w.int_f()).epsilon(1e-12));
    for (double y : {0.377, 1.25, 3.0, 7.7131, 19.4}) {
        CHECK(std::abs(w.fhat(y) - fhat_quadrature(w, y)) < 1e-10);
        CHECK(w.fhat(-y) == w.fhat(y)); // evenness, exact by construction
    }
    CHECK(w.fhat_cutoff() > 5.0);
    CHECK(std::abs(w.fhat(w.fhat_cutoff() + 1.0)) == 0.0);

    // autocorrelation: C(0) = int f^2, C(+-s) even, support [-2,2]
    CHECK(w.autocorr(0.0) == doctest::Approx(w.int_f2()).epsilon(1e-10));
    CHECK(w.autocorr(0.6) == w.autocorr(-0.6));
    CHECK(w.autocorr(2.1) == 0.0);
}

TEST_CASE("window kmax rule") {
    const WindowPair& w = WindowPair::standard();
    const long k10 = w.kmax(10);
    CHECK(k10 >= 10);
    CHECK(k10 <= 2000);
    CHECK(std::abs(w.fhat(static_cast<double>(k10 + 1) / 10.0)) < 1e-14 * w.fhat(0.0));
}

TEST_CASE("F_K: localization, periodicity, Fourier coefficients") {
    const WindowPair& w = WindowPair::standard();
    // theta = 0, K = 10: only the j = 0 term survives
    CHECK(window_fk(0.0, 10, w) == doctest::Approx(w.f(0.0)).epsilon(1e-14));

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(0.0, kHalfPi);
    for (int i = 0; i < 100; ++i) {
        const double t = uni(rng);
        CHECK(window_fk(t + kHalfPi, 10, w) == doctest::Approx(window_fk(t, 10, w)).epsilon(1e-12));
    }

    // (2/pi) int_0^{pi/2} F_K(t) e^{-4ikt} dt = fhat(k/K)/K  for k in {0,1,5,K}
    const std::uint64_t K = 10;
    const int M = 40000;
    for (long k : {0L, 1L, 5L, 10L}) {
        std::complex<double> acc(0.0, 0.0);
        for (int i = 0; i < M; ++i) {
            const double t = (i + 0.5) * kHalfPi / M;
            const double ph = -4.0 * k * t;
            acc += window_fk(t, K, w) * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        acc *= kHalfPi / M / kHalfPi; // average, i.e. (2/pi) * integral
        const double want = w.fhat(static_cast<double>(k) / K) / K;
        CHECK(std::abs(acc - std::complex<double>(want, 0.0)) < 1e-10);
    }
}

TEST_CASE("alternative window differs but keeps the contract") {
    const WindowPair& a = WindowPair::alternative();
    CHECK(a.c2() > 0);
    CHECK(a.f(0.0) == doctest::Approx(std::exp(-2.0)));
    CHECK(a.fhat(0.0) == doctest::Approx(a.int_f()).epsilon(1e-12));
}

TEST_CASE("hecke sums: symmetry and brute force over independent ideals") {
    const WindowPair& w = WindowPair::standard();
    HeckeCache cache(10000, w);

    // T(-k) = conj T(k)
    for (long k : {1L, 3L, 17L}) {
        auto plus = hecke_sum(k, cache);
        auto minus = hecke_sum(-k, cache);
        CHECK(plus.real() == doctest::Approx(minus.real()).epsilon(1e-12));
        CHECK(plus.imag() == doctest::Approx(-minus.imag()).epsilon(1e-12));
    }

    // brute force over the generator-grid ideal enumeration
    auto ideals = oracles::prime_ideals_brute(10000);
    std::complex<double> brute(0.0, 0.0);
    const long k = 3;
    for (const auto& id : ideals) {
        const double lam = std::log(static_cast<double>(id.norm));
        std::uint64_t n = id.norm;
        for (unsigned r = 1;; ++r) {
            const double ang = std::fmod(r * id.angle, kHalfPi);
            const double ph = 4.0 * k * ang;
            brute += lam * w.phi(static_cast<double>(n) / 10000.0) *
                     std::complex<double>(std::cos(ph), std::sin(ph));
            if (n > 10000 / id.norm) break;
            n *= id.norm;
        }
    }
    auto got = hecke_sum(k, cache);
    CHECK(std::abs(got - brute) <= 1e-9 * std::abs(brute));
}

TEST_CASE("hecke zero mode: Prime Ideal Theorem scale and prime-power gap") {
    const WindowPair& w = WindowPair::standard();
    HeckeCache all(100000, w);
    HeckeCache primes(100000, w, true);

    const double t0 = all.hecke(0).real();
    CHECK(all.hecke(0).imag() == 0.0);
    const double pit = 100000.0 * w.int_phi();
    CHECK(t0 / pit > 0.9);
    CHECK(t0 / pit < 1.1);

    // higher powers contribute a positive sliver of size O(sqrt X)
    const double gap = t0 - primes.hecke(0).real();
    CHECK(gap > 0.0);
    CHECK(gap < std::sqrt(100000.0));
}

TEST_CASE("psi_direct: empty support and a two-pass summation oracle") {
    const WindowPair& w = WindowPair::standard();
    auto ideals = prime_ideal_angles(1000);
    HeckeCache cache(ideals, 1000, w);

    // X so small the radial window is empty: Phi support is (X/4, X)
    HeckeCache tiny(prime_ideal_angles(2), 2, w);
    CHECK(tiny.size() == 0);
    CHECK(psi_direct(0.3, 5, tiny) == 0.0);

    // independent second pass in a different order with the raw formula
    const double theta = std::numbers::pi / 8;
    double want = 0.0;
    for (auto it = ideals.rbegin(); it != ideals.rend(); ++it) {
        const double lam = std::log(static_cast<double>(it->norm));
        std::uint64_t n = it->norm;
        for (unsigned r = 1;; ++r) {
            want += lam * w.phi(static_cast<double>(n) / 1000.0) *
                    window_fk(std::fmod(r * it->angle, kHalfPi) - theta, 5, w);
            if (n > 1000 / it->norm) break;
            n *= it->norm;
        }
    }
    CHECK(psi_direct(theta, 5, cache) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("psi mean over a theta grid tracks (X/K) c1") {
    const WindowPair& w = WindowPair::standard();
    HeckeCache cache(100000, w);
    const std::uint64_t K = 10;
    double acc = 0.0;
    const int M = 2000;
    for (int i = 0; i < M; ++i) acc += psi_direct((i + 0.5) * kHalfPi / M, K, cache);
    acc /= M;
    const double want = 100000.0 / K * w.c1();
    CHECK(acc / want > 0.9);
    CHECK(acc / want < 1.1);
}

TEST_CASE("psi_fourier agrees with psi_direct; edge modes behave") {
    const WindowPair& w = WindowPair::standard();
    HeckeCache cache(10000, w);
    const std::uint64_t K = 20;

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, kHalfPi);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double t = uni(rng);
        worst = std::max(worst, std::abs(psi_fourier(t, K, cache) - psi_direct(t, K, cache)));
    }
    CHECK(worst <= 1e-6 * (10000.0 / K));

    // kmax = 0 keeps only the theta-independent mean term
    const double m0 = psi_fourier(0.123, K, cache, 0);
    CHECK(m0 == doctest::Approx(w.fhat(0.0) / K * cache.weight_sum()).epsilon(1e-12));

    // pi/2 periodicity
    const double t = 0.37;
    CHECK(psi_fourier(t + kHalfPi, K, cache) == doctest::Approx(psi_fourier(t, K, cache)).epsilon(1e-10));
}

TEST_CASE("variance: Parseval vs quadrature vs autocorrelation") {
    const WindowPair& w = WindowPair::standard();
    HeckeCache cache(10000, w);
    for (std::uint64_t K : {10, 40, 160}) {
        const double vp = variance_parseval(K, cache);
        const double vq = variance_quadrature(K, cache);
        CHECK(vp == doctest::Approx(vq).epsilon(1e-4));
    }
    // the two internal evaluation routes compute the same number
    const double direct = variance_parseval(40, cache);
    HeckeCache fresh(10000, w);
    // force the pair-sum path by a tiny explicit budget: reuse internal identity
    // via an equivalent call at kmax large enough that the route flips
    const double via_pairs = variance_parseval(40, fresh, 100000000L);
    CHECK(direct == doctest::Approx(via_pairs).epsilon(1e-9));
}

TEST_CASE("variance in the trivial regime: c2 X log X / K") {
    const WindowPair& w = WindowPair::standard();
    HeckeCache cache(1000, w);
    const std::uint64_t K = 1000000;
    const double got = variance_parseval(K, cache);
    CHECK(got > 0.0);
    const double want = w.c2() * 1000.0 * std::log(1000.0) / static_cast<double>(K);
    CHECK(got / want > 0.85);
    CHECK(got / want < 1.15);
}

TEST_CASE("variance edge: empty radial support gives zero") {
    const WindowPair& w = WindowPair::standard();
    HeckeCache tiny(prime_ideal_angles(2), 2, w);
    CHECK(variance_parseval(100, tiny) == 0.0);
}

TEST_CASE("conjecture 5.1 ratio fields") {
    const WindowPair& w = WindowPair::standard();
    HeckeCache cache(10000, w);
    auto c = conjecture51_ratio(40, cache);
    CHECK(c.predicted > 0.0);
    CHECK(c.measured > 0.0);

    // K >> X reduces the prediction to the trivial-regime formula
    auto t = conjecture51_ratio(1000000, HeckeCache(1000, w));
    CHECK(t.predicted == doctest::Approx(w.c2() * 1000.0 * std::log(1000.0) / 1e6));

    CHECK_THROWS_AS(conjecture51_ratio(1, cache), std::invalid_argument);
}

TEST_CASE("conjecture 5.1 ratio climbs toward 1 across the crossover at X = 10^6") {
    // The asymptotic prediction overshoots in the crossover regime at this X:
    // measured/predicted is 0.406 at K = X^0.3 (quadrature-confirmed), then
    // climbs monotonically toward 1.  Frozen from a verified run.
    const WindowPair& w = WindowPair::standard();
    HeckeCache cache(1000000, w);
    double prev = 0.0;
    const std::vector<std::pair<double, double>> expected = {
        {0.3, 0.4063}, {0.45, 0.6066}, {0.6, 0.8540}, {0.8, 0.9318}};
    for (const auto& [beta, want] : expected) {
        const auto K = static_cast<std::uint64_t>(std::llround(std::pow(1e6, beta)));
        const auto c = conjecture51_ratio(K, cache);
        const double r = c.measured / c.predicted;
        CHECK(r == doctest::Approx(want).epsilon(0.01));
        CHECK(r > prev);
        prev = r;
    }
}
