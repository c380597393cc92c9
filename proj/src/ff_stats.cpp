#include "primeangles/ff_stats.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "primeangles/common.hpp"

namespace primeangles::ff {

bool is_irreducible(const Fq& F, const Poly& f) {
    const int n = f.deg();
    if (n < 1) throw std::invalid_argument("is_irreducible: need deg >= 1");
    if (f.lead() != 1) throw std::invalid_argument("is_irreducible: f must be monic");
    if (n == 1) return true;

    const Poly s{{0, 1}};
    // x^{q^n} must reduce to x mod f
    Poly frob = s;
    for (int i = 0; i < n; ++i) frob = poly_powmod(F, frob, F.p(), f);
    if (!(frob == poly_mod(F, s, f))) return false;
    // no factor of degree n/l for prime l | n
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool lp = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) { lp = false; break; }
        if (!lp) continue;
        Poly g = s;
        for (int i = 0; i < n / l; ++i) g = poly_powmod(F, g, F.p(), f);
        if (poly_gcd(F, poly_sub(F, g, s), f).deg() > 0) return false;
    }
    return true;
}

int von_mangoldt(const Fq& F, const Poly& f) {
    if (f.deg() < 1) throw std::invalid_argument("von_mangoldt: need deg >= 1");
    const Poly g = poly_monic(F, f);
    const Poly s{{0, 1}};

    // smallest d with gcd(g, S^{q^d} - S) nontrivial = degree of the smallest
    // irreducible factor; the gcd itself is the product of those factors
    Poly frob = poly_mod(F, s, g);
    for (int d = 1; d <= g.deg(); ++d) {
        frob = poly_powmod(F, frob, F.p(), g);
        const Poly h = poly_gcd(F, poly_sub(F, frob, s), g);
        if (h.deg() == 0) continue;
        if (h.deg() != d) return 0; // two or more distinct factors of degree d
        // g must be a pure power of h
        Poly rest = g;
        while (rest.deg() > 0) {
            auto [quo, rem] = poly_divrem(F, rest, h);
            if (!rem.is_zero()) return 0;
            rest = quo;
        }
        return d;
    }
    return g.deg(); // g itself irreducible
}

std::uint64_t irreducible_count(std::uint32_t q, int nu) {
    if (nu < 1) throw std::invalid_argument("irreducible_count: nu must be >= 1");
    auto mobius = [](int n) {
        int m = 1;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
        if (n > 1) m = -m;
        return m;
    };
    std::int64_t acc = 0;
    for (int d = 1; d <= nu; ++d) {
        if (nu % d != 0) continue;
        std::int64_t qe = 1;
        for (int i = 0; i < nu / d; ++i) qe *= q;
        acc += mobius(d) * qe;
    }
    return static_cast<std::uint64_t>(acc / nu);
}

SectorTallies sector_tallies(const DirGroup& G, int nu) {
    if (nu < 1) throw std::invalid_argument("sector_tallies: nu must be >= 1");
    const Fq& F = G.field();
    const std::uint64_t q = F.p();
    const std::uint64_t allowed = std::min<std::uint64_t>(400000000ULL, budget_mb() * 100000ULL);
    std::uint64_t total = 1;
    for (int i = 0; i < nu; ++i) {
        total *= q;
        if (total * G.order() > allowed)
            throw budget_error("sector_tallies: q^{nu+kappa} over budget; use the spectral path");
    }

    SectorTallies t;
    t.nu = nu;
    t.lambda_w.assign(G.order(), 0);
    t.prime_n.assign(G.order(), 0);
    t.count.assign(G.order(), 0);

    Poly f;
    f.c.assign(static_cast<std::size_t>(nu) + 1, 0);
    f.c[static_cast<std::size_t>(nu)] = 1;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t rest = code;
        for (int i = 0; i < nu; ++i) {
            f.c[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % q);
            rest /= q;
        }
        if (f.c[0] == 0) continue;
        const std::uint32_t u = G.index_of(direction(F, f, G.k()));
        t.count[u] += 1;
        const int lam = von_mangoldt(F, f);
        if (lam > 0) {
            t.lambda_w[u] += lam;
            if (lam == nu) t.prime_n[u] += 1; // Lambda = nu only for f irreducible
        }
    }
    return t;
}

std::int64_t psi_sector(const DirGroup& G, const Series& u, int nu) {
    const SectorTallies t = sector_tallies(G, nu);
    return t.lambda_w[G.index_of(u)];
}

std::int64_t n_sector(const DirGroup& G, const Series& u, int nu) {
    const SectorTallies t = sector_tallies(G, nu);
    return t.prime_n[G.index_of(u)];
}

double theorem_var_psi_factor(int kappa, int nu) {
    const int eta = nu % 2 == 0 ? 1 : 0;
    if (nu <= kappa - 1) return nu + eta;
    if (nu <= 2 * (kappa - 1)) return nu - 1 + eta;
    return 2 * kappa - 2;
}

namespace {

// exact population variance of integer per-sector values, as a double at the end
double exact_variance(const std::vector<std::int64_t>& v) {
    const auto n = static_cast<__int128>(v.size());
    __int128 sum = 0, sumsq = 0;
    for (std::int64_t x : v) {
        sum += x;
        sumsq += static_cast<__int128>(x) * x;
    }
    // var = sumsq/n - (sum/n)^2 = (n*sumsq - sum^2) / n^2
    const __int128 num = n * sumsq - sum * sum;
    return static_cast<double>(static_cast<long double>(num) /
                               (static_cast<long double>(n) * static_cast<long double>(n)));
}

double exact_mean(const std::vector<std::int64_t>& v) {
    __int128 sum = 0;
    for (std::int64_t x : v) sum += x;
    return static_cast<double>(static_cast<long double>(sum) / static_cast<long double>(v.size()));
}

} // namespace

FfVarianceReport ff_variance(const DirGroup& G, const SectorTallies& t) {
    FfVarianceReport r;
    r.q = G.field().p();
    r.k = G.k();
    r.kappa = G.kappa();
    r.nu = t.nu;
    r.eta = t.nu % 2 == 0 ? 1 : 0;
    r.mean_psi = exact_mean(t.lambda_w);
    r.var_psi = exact_variance(t.lambda_w);
    r.mean_n = exact_mean(t.prime_n);
    r.var_n = exact_variance(t.prime_n);
    r.theorem_prediction =
        std::pow(static_cast<double>(r.q), r.nu - r.kappa) * theorem_var_psi_factor(r.kappa, r.nu);
    r.prediction_in_range = r.kappa >= 3 || (r.kappa == 2 && r.q % 5 != 0);
    return r;
}

FfVarianceReport ff_variance(std::uint32_t q, int k, int nu) {
    const DirGroup G(q, k);
    return ff_variance(G, sector_tallies(G, nu));
}

RemainderReport remainder_meansquare(std::uint32_t q, int k, int nu) {
    const DirGroup G(q, k);
    const SectorTallies t = sector_tallies(G, nu);
    std::vector<std::int64_t> r(G.order());
    for (std::size_t u = 0; u < r.size(); ++u)
        r[u] = t.lambda_w[u] - static_cast<std::int64_t>(nu) * t.prime_n[u];
    RemainderReport out;
    // raw second moment, not centered: <R^2> as in the bound
    long double acc = 0;
    for (std::int64_t x : r) acc += static_cast<long double>(x) * x;
    out.mean_square = static_cast<double>(acc / r.size());
    const double qd = q;
    out.reference_bound =
        std::pow(qd, nu - 2.0 * G.kappa()) + std::pow(qd, 2.0 * nu / 3.0 - G.kappa());
    return out;
}

std::string ff_variance_csv(const std::vector<FfVarianceReport>& rows) {
    std::string out = "q,k,kappa,nu,mean_psi,var_psi,var_n,prediction,ratio\n";
    char line[256];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%u,%d,%d,%d,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.q, r.k,
                      r.kappa, r.nu, r.mean_psi, r.var_psi, r.var_n, r.theorem_prediction,
                      r.theorem_prediction > 0 ? r.var_psi / r.theorem_prediction : 0.0);
        out += line;
    }
    return out;
}

} // namespace primeangles::ff
