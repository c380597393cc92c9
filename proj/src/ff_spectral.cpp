#include "primeangles/ff_spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "primeangles/common.hpp"
#include "primeangles/rmt.hpp"

namespace primeangles::ff {

CharacterTable::CharacterTable(std::uint32_t q, int k) : CharacterTable(DirGroup(q, k)) {}

CharacterTable::CharacterTable(DirGroup group) : G_(std::move(group)) {
    if (G_.order() > 20000)
        throw budget_error("CharacterTable: group order " + std::to_string(G_.order()) +
                           " exceeds the table budget");
    build_basis();
    compute_swans();
    counts_.resize(static_cast<std::size_t>(G_.k()));
}

void CharacterTable::build_basis() {
    const auto n = static_cast<std::uint32_t>(G_.order());
    const std::uint32_t q = G_.field().p();
    dlog_.assign(n, {});
    std::vector<char> known(n, 0);
    known[0] = 1; // identity has index 0 (all odd coefficients zero)
    std::vector<std::uint32_t> span{0};

    while (span.size() < n) {
        // quotient order q^j of g relative to the current span
        auto quotient_exp = [&](std::uint32_t g) {
            int j = 0;
            std::uint32_t cur = g;
            while (!known[cur]) {
                cur = G_.pow(cur, q);
                ++j;
            }
            return std::pair<int, std::uint32_t>(j, cur);
        };

        int best_j = -1;
        std::uint32_t best_g = 0;
        for (std::uint32_t g = 0; g < n; ++g) {
            if (known[g]) continue;
            const int j = quotient_exp(g).first;
            if (j > best_j) {
                best_j = j;
                best_g = g;
            }
        }

        // adjust so the new generator has trivial intersection with the span:
        // g^t = s in span with exponents c_i; replace g by g * prod b_i^{-d_i}
        // where t d_i = c_i (mod m_i)
        std::uint64_t t = 1;
        for (int i = 0; i < best_j; ++i) t *= q;
        (void)best_g;
        std::uint32_t gp = 0;
        bool found = false;
        for (std::uint32_t g = 0; g < n && !found; ++g) {
            if (known[g] || quotient_exp(g).first != best_j) continue;
            const std::uint32_t s = G_.pow(g, t);
            const std::vector<std::uint32_t>& c = dlog_[s];
            std::vector<std::uint64_t> d(orders_.size(), 0);
            bool ok = true;
            for (std::size_t i = 0; i < orders_.size() && ok; ++i) {
                const std::uint64_t m = orders_[i];
                if (t <= m) {
                    if (c[i] % t != 0) ok = false;
                    else d[i] = c[i] / t;
                } else if (c[i] != 0) {
                    ok = false;
                }
            }
            if (!ok) continue;
            std::uint32_t adj = g;
            for (std::size_t i = 0; i < orders_.size(); ++i)
                if (d[i]) adj = G_.mul(adj, G_.pow(basis_[i], orders_[i] - d[i]));
            if (G_.pow(adj, t) != 0) continue; // not a clean generator, try the next
            gp = adj;
            found = true;
        }
        if (!found)
            throw std::logic_error("CharacterTable: no basis extension found (group not abelian?)");

        basis_.push_back(gp);
        orders_.push_back(t);
        const std::vector<std::uint32_t> old_span = span;
        for (std::uint32_t e : span) dlog_[e].push_back(0);
        std::uint32_t ga = 0; // gp^a, starting from a = 1
        for (std::uint64_t a = 1; a < t; ++a) {
            ga = a == 1 ? gp : G_.mul(ga, gp);
            for (std::uint32_t e : old_span) {
                const std::uint32_t idx = G_.mul(e, ga);
                known[idx] = 1;
                dlog_[idx] = dlog_[e];
                dlog_[idx].back() = static_cast<std::uint32_t>(a);
                span.push_back(idx);
            }
        }
    }

    E_ = 1;
    for (std::uint64_t m : orders_) E_ = std::max(E_, m); // p-group: lcm = max
    std::uint64_t prod = 1;
    for (std::uint64_t m : orders_) prod *= m;
    if (prod != G_.order())
        throw std::logic_error("CharacterTable: basis orders do not multiply to |G|");
}

std::uint64_t CharacterTable::value_exponent(std::uint32_t chi, std::uint32_t elem) const {
    // chi in mixed radix over the factor orders
    std::uint64_t val = 0;
    std::uint64_t rest = chi;
    const std::vector<std::uint32_t>& v = dlog_[elem];
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        const std::uint64_t x = rest % orders_[i];
        rest /= orders_[i];
        val = (val + x * v[i] * (E_ / orders_[i])) % E_;
    }
    return val;
}

std::complex<double> CharacterTable::value(std::uint32_t chi, std::uint32_t elem) const {
    const double ph =
        2.0 * std::numbers::pi * static_cast<double>(value_exponent(chi, elem)) / static_cast<double>(E_);
    return {std::cos(ph), std::sin(ph)};
}

std::complex<double> CharacterTable::value_poly(std::uint32_t chi, const Poly& f) const {
    if (f.constant() == 0) return {0.0, 0.0};
    return value(chi, G_.index_of(direction(G_.field(), f, G_.k())));
}

void CharacterTable::compute_swans() {
    const auto n = static_cast<std::uint32_t>(G_.order());
    std::vector<int> lowidx(n);
    for (std::uint32_t e = 0; e < n; ++e) lowidx[e] = low_index_minus_one(G_.element(e));
    swan_.assign(n, 0);
    for (std::uint32_t chi = 1; chi < n; ++chi) {
        int best = 0;
        for (std::uint32_t e = 1; e < n; ++e)
            if (value_exponent(chi, e) != 0 && lowidx[e] > best) best = lowidx[e];
        swan_[chi] = best;
    }
}

const std::vector<std::int64_t>& CharacterTable::sector_counts(int nn) const {
    if (nn < 0 || nn >= G_.k())
        throw std::invalid_argument("sector_counts: need 0 <= n < k (higher degrees vanish)");
    auto& slot = counts_[static_cast<std::size_t>(nn)];
    if (slot) return *slot;

    std::vector<std::int64_t> cnt(G_.order(), 0);
    const Fq& F = G_.field();
    const std::uint64_t q = F.p();
    if (nn == 0) {
        cnt[0] = 1; // the constant 1
    } else {
        std::uint64_t total = 1;
        for (int i = 0; i < nn; ++i) total *= q;
        Poly f;
        f.c.assign(static_cast<std::size_t>(nn) + 1, 0);
        f.c[static_cast<std::size_t>(nn)] = 1;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t rest = code;
            for (int i = 0; i < nn; ++i) {
                f.c[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % q);
                rest /= q;
            }
            if (f.c[0] == 0) continue;
            cnt[G_.index_of(direction(F, f, G_.k()))] += 1;
        }
    }
    slot = std::move(cnt);
    return *slot;
}

FrobeniusSpectrum l_polynomial(const CharacterTable& T, std::uint32_t chi) {
    if (chi == 0) throw std::invalid_argument("l_polynomial: character must be nontrivial");
    FrobeniusSpectrum fs;
    fs.chi = chi;
    fs.swan = T.swan(chi);
    const int d = fs.swan;
    const auto q = static_cast<double>(T.q());
    const std::uint64_t order = T.size();

    auto coeff = [&](int n) {
        std::complex<double> acc(0.0, 0.0);
        const auto& cnt = T.sector_counts(n);
        for (std::uint32_t u = 0; u < order; ++u)
            if (cnt[u]) acc += static_cast<double>(cnt[u]) * T.value(chi, u);
        return acc;
    };

    for (int n = 0; n <= d; ++n) fs.lpoly.push_back(coeff(n));

    // degree certificate: coefficients above the Swan conductor vanish; past
    // k-1 that is the full character sum over the unit residues, computed from
    // the group directly
    for (int n = d + 1; n <= d + 2; ++n) {
        std::complex<double> c;
        if (n <= T.k() - 1) {
            c = coeff(n);
        } else {
            std::complex<double> s(0.0, 0.0);
            for (std::uint32_t u = 0; u < order; ++u) s += T.value(chi, u);
            const double hev = (q - 1) * std::pow(q, (T.k() - 1) / 2);
            c = s * hev * std::pow(q, n - T.k());
        }
        fs.degree_certificate = std::max(fs.degree_certificate, std::abs(c));
    }

    // remove the trivial zero at z = 1: L(z) = (1-z) Q(z)
    std::complex<double> lone(0.0, 0.0);
    for (const auto& c : fs.lpoly) lone += c;
    fs.trivial_zero_residual = std::abs(lone);

    std::vector<std::complex<double>> quot(static_cast<std::size_t>(d), 0.0);
    std::complex<double> carry(0.0, 0.0);
    for (int n = 0; n < d; ++n) {
        carry = fs.lpoly[static_cast<std::size_t>(n)] + carry;
        quot[static_cast<std::size_t>(n)] = carry;
    }

    if (d > 1) {
        const int m = d - 1;
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
        const std::complex<double> lead = quot[static_cast<std::size_t>(m)];
        for (int i = 0; i < m; ++i) {
            comp(i, m - 1) = -quot[static_cast<std::size_t>(i)] / lead;
            if (i + 1 < m) comp(i + 1, i) = 1.0;
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("l_polynomial: eigenvalue solve failed");
        for (int i = 0; i < m; ++i) {
            const std::complex<double> z = es.eigenvalues()(i);
            // L(z_j) residual on the original polynomial
            std::complex<double> val(0.0, 0.0);
            for (int n = d; n >= 0; --n) val = val * z + fs.lpoly[static_cast<std::size_t>(n)];
            fs.max_root_residual = std::max(fs.max_root_residual, std::abs(val));
            fs.max_unitarity_error =
                std::max(fs.max_unitarity_error, std::abs(std::sqrt(q) * std::abs(z) - 1.0));
            // z_j = q^{-1/2} e^{-i phi_j}
            fs.eigenangles.push_back(-std::arg(z * std::sqrt(q)));
        }
    }
    return fs;
}

std::complex<double> character_prime_sum(const CharacterTable& T, const SectorTallies& tallies,
                                         std::uint32_t chi) {
    std::complex<double> acc(0.0, 0.0);
    for (std::uint32_t u = 0; u < T.size(); ++u)
        if (tallies.lambda_w[u]) acc += static_cast<double>(tallies.lambda_w[u]) * T.value(chi, u);
    return acc;
}

std::complex<double> character_prime_sum(const CharacterTable& T, std::uint32_t chi, int nu) {
    const SectorTallies t = sector_tallies(T.group(), nu);
    return character_prime_sum(T, t, chi);
}

std::complex<double> character_prime_sum_trace(const FrobeniusSpectrum& fs, std::uint32_t q,
                                               int nu) {
    if (nu < 1) throw std::invalid_argument("character_prime_sum_trace: nu must be >= 1");
    std::complex<double> tr(0.0, 0.0);
    for (double phi : fs.eigenangles) tr += std::complex<double>(std::cos(nu * phi), std::sin(nu * phi));
    return -std::pow(static_cast<double>(q), nu / 2.0) * tr - 1.0;
}

std::vector<FrobeniusSpectrum> all_spectra(const CharacterTable& T) {
    std::vector<FrobeniusSpectrum> out;
    out.reserve(T.size() - 1);
    for (std::uint32_t chi = 1; chi < T.size(); ++chi) out.push_back(l_polynomial(T, chi));
    return out;
}

double spectral_variance(const CharacterTable& T, int nu) {
    if (nu < 1) throw std::invalid_argument("spectral_variance: nu must be >= 1");
    const auto q = static_cast<double>(T.q());
    double acc = 0.0;
    for (const auto& fs : all_spectra(T))
        acc += std::norm(character_prime_sum_trace(fs, T.q(), nu));
    return acc / std::pow(q, 2.0 * T.kappa());
}

double spectral_variance(std::uint32_t q, int k, int nu) {
    return spectral_variance(CharacterTable(q, k), nu);
}

KatzReport katz_moment_comparison(std::uint32_t q, int k, int nu) {
    const int kappa = kappa_of(k);
    if (kappa < 2) throw std::invalid_argument("katz_moment_comparison: need kappa >= 2");
    const CharacterTable T(q, 2 * kappa); // primitive characters live mod S^{2 kappa}
    KatzReport r;
    r.usp_moment = rmt::exact_moment(
        {rmt::Group::Symplectic, 2 * kappa - 2, nu, nu});
    double prim_acc = 0.0, tot_psi = 0.0, nonprim_psi = 0.0;
    for (const auto& fs : all_spectra(T)) {
        const double psi2 = std::norm(character_prime_sum_trace(fs, q, nu));
        tot_psi += psi2;
        if (fs.swan == 2 * kappa - 1) {
            std::complex<double> tr(0.0, 0.0);
            for (double phi : fs.eigenangles)
                tr += std::complex<double>(std::cos(nu * phi), std::sin(nu * phi));
            prim_acc += std::norm(tr);
            ++r.primitive_count;
        } else {
            nonprim_psi += psi2;
        }
    }
    r.empirical = r.primitive_count ? prim_acc / static_cast<double>(r.primitive_count) : 0.0;
    r.nonprimitive_share = tot_psi > 0 ? nonprim_psi / tot_psi : 0.0;
    return r;
}

double orthogonality_max_error(const CharacterTable& T) {
    const auto n = static_cast<std::uint32_t>(T.size());
    double worst = 0.0;
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; b < n; ++b) {
            std::complex<double> acc(0.0, 0.0);
            for (std::uint32_t u = 0; u < n; ++u) acc += T.value(a, u) * std::conj(T.value(b, u));
            acc /= static_cast<double>(n);
            const double want = a == b ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(acc - std::complex<double>(want, 0.0)));
        }
    }
    return worst;
}

} // namespace primeangles::ff
