#include "primeangles/ff_core.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "primeangles/common.hpp"

namespace primeangles::ff {

Fq::Fq(std::uint32_t p) : p_(p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("Fq: p must be an odd prime");
    for (std::uint32_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) throw std::invalid_argument("Fq: p must be an odd prime");
}

std::uint32_t Fq::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1 % p_;
    a %= p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t Fq::inv(std::uint32_t a) const {
    if (a % p_ == 0) throw std::invalid_argument("Fq::inv at zero");
    return pow(a, p_ - 2);
}

Poly poly_trim(std::vector<std::uint32_t> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return Poly{std::move(coeffs)};
}

Poly poly_add(const Fq& F, const Poly& a, const Poly& b) {
    std::vector<std::uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.at(i), b.at(i));
    return poly_trim(std::move(c));
}

Poly poly_sub(const Fq& F, const Poly& a, const Poly& b) {
    std::vector<std::uint32_t> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.at(i), b.at(i));
    return poly_trim(std::move(c));
}

Poly poly_mul(const Fq& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::uint32_t> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
    }
    return poly_trim(std::move(c));
}

std::pair<Poly, Poly> poly_divrem(const Fq& F, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("poly_divrem: division by zero");
    if (a.deg() < b.deg()) return {{}, a};
    std::vector<std::uint32_t> rem = a.c;
    std::vector<std::uint32_t> quo(a.c.size() - b.c.size() + 1, 0);
    const std::uint32_t lead_inv = F.inv(b.lead());
    for (std::size_t i = a.c.size(); i-- >= b.c.size();) {
        if (i >= rem.size() || rem[i] == 0) {
            if (i == 0) break;
            continue;
        }
        const std::uint32_t q = F.mul(rem[i], lead_inv);
        quo[i - (b.c.size() - 1)] = q;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            rem[i - (b.c.size() - 1) + j] = F.sub(rem[i - (b.c.size() - 1) + j], F.mul(q, b.c[j]));
        if (i == 0) break;
    }
    return {poly_trim(std::move(quo)), poly_trim(std::move(rem))};
}

Poly poly_mod(const Fq& F, const Poly& a, const Poly& m) { return poly_divrem(F, a, m).second; }

Poly poly_monic(const Fq& F, const Poly& a) {
    if (a.is_zero() || a.lead() == 1) return a;
    const std::uint32_t s = F.inv(a.lead());
    Poly r = a;
    for (auto& c : r.c) c = F.mul(c, s);
    return r;
}

Poly poly_gcd(const Fq& F, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

Poly poly_powmod(const Fq& F, Poly base, std::uint64_t e, const Poly& m) {
    Poly r{{1}};
    base = poly_mod(F, base, m);
    while (e) {
        if (e & 1) r = poly_mod(F, poly_mul(F, r, base), m);
        base = poly_mod(F, poly_mul(F, base, base), m);
        e >>= 1;
    }
    return r;
}

std::uint32_t poly_eval(const Fq& F, const Poly& a, std::uint32_t x) {
    std::uint32_t r = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) {
        r = F.add(F.mul(r, x), a.c[i]);
        if (i == 0) break;
    }
    return r;
}

std::string poly_format(const Poly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (i) out += '+';
        out += std::to_string(a.c[i]);
        if (i == 1) out += "*S";
        else if (i > 1) out += "*S^" + std::to_string(i);
    }
    return out;
}

Poly poly_parse(const Fq& F, const std::string& text) {
    std::vector<std::uint32_t> c;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find('+', pos);
        if (next == std::string::npos) next = text.size();
        const std::string term = text.substr(pos, next - pos);
        pos = next + 1;

        const std::size_t star = term.find('*');
        const std::uint64_t coeff = std::stoull(term.substr(0, star));
        std::size_t exp = 0;
        if (star != std::string::npos) {
            const std::size_t caret = term.find('^', star);
            exp = caret == std::string::npos ? 1 : std::stoull(term.substr(caret + 1));
        }
        if (c.size() <= exp) c.resize(exp + 1, 0);
        c[exp] = F.add(c[exp], static_cast<std::uint32_t>(coeff % F.p()));
    }
    return poly_trim(std::move(c));
}

Series series_from_poly(const Fq& F, const Poly& a, int k) {
    (void)F;
    if (k < 1) throw std::invalid_argument("series_from_poly: k must be >= 1");
    Series s;
    s.k = k;
    s.c.assign(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k && i < static_cast<int>(a.c.size()); ++i) s.c[i] = a.c[i];
    return s;
}

Series series_one(int k) {
    Series s;
    s.k = k;
    s.c.assign(static_cast<std::size_t>(k), 0);
    s.c[0] = 1;
    return s;
}

Series series_mul(const Fq& F, const Series& a, const Series& b) {
    Series r;
    r.k = a.k;
    r.c.assign(a.c.size(), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; i + j < b.c.size(); ++j)
            r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    return r;
}

Series series_inverse(const Fq& F, const Series& a) {
    if (a.at(0) == 0) throw std::invalid_argument("series_inverse: constant term is zero");
    Series b;
    b.k = a.k;
    b.c.assign(a.c.size(), 0);
    const std::uint32_t c0inv = F.inv(a.c[0]);
    b.c[0] = c0inv;
    for (std::size_t i = 1; i < a.c.size(); ++i) {
        std::uint32_t acc = 0;
        for (std::size_t j = 1; j <= i; ++j) acc = F.add(acc, F.mul(a.at(j), b.c[i - j]));
        b.c[i] = F.mul(F.neg(acc), c0inv);
    }
    return b;
}

Series series_pow(const Fq& F, Series base, std::uint64_t e) {
    Series r = series_one(base.k);
    while (e) {
        if (e & 1) r = series_mul(F, r, base);
        base = series_mul(F, base, base);
        e >>= 1;
    }
    return r;
}

Series sigma(const Fq& F, const Series& a) {
    Series r = a;
    for (std::size_t i = 1; i < r.c.size(); i += 2) r.c[i] = F.neg(r.c[i]);
    return r;
}

Poly sigma(const Fq& F, const Poly& a) {
    Poly r = a;
    for (std::size_t i = 1; i < r.c.size(); i += 2) r.c[i] = F.neg(r.c[i]);
    return r;
}

Series norm(const Fq& F, const Series& a) { return series_mul(F, a, sigma(F, a)); }

bool is_even_series(const Series& a) {
    for (std::size_t i = 1; i < a.c.size(); i += 2)
        if (a.c[i] != 0) return false;
    return true;
}

int low_index_minus_one(const Series& a) {
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        const std::uint32_t want = i == 0 ? 1 : 0;
        if (a.c[i] != want) return static_cast<int>(i);
    }
    return a.k;
}

int kappa_of(int k) { return k / 2; }

std::uint64_t direction_group_order(std::uint32_t q, int k) {
    std::uint64_t r = 1;
    for (int i = 0; i < kappa_of(k); ++i) r *= q;
    return r;
}

namespace {

// even coefficients of a norm-one series from its free odd ones:
// coefficient of S^{2t} in f(S) f(-S) must vanish for 0 < 2t < k
void force_even_coeffs(const Fq& F, Series& u) {
    const std::uint32_t inv2 = F.inv(2);
    for (int m = 2; m < u.k; m += 2) {
        const int t = m / 2;
        std::uint32_t acc = 0; // sum over i < j, i + j = m, both known (i >= 1 unknown is m itself)
        for (int i = 1; 2 * i < m; ++i) {
            const int j = m - i;
            std::uint32_t term = F.mul(u.at(static_cast<std::size_t>(i)),
                                       u.at(static_cast<std::size_t>(j)));
            term = F.mul(term, 2);
            if (i % 2) term = F.neg(term);
            acc = F.add(acc, term);
        }
        std::uint32_t mid = F.mul(u.at(static_cast<std::size_t>(t)), u.at(static_cast<std::size_t>(t)));
        if (t % 2) mid = F.neg(mid);
        acc = F.add(acc, mid);
        // remaining term: 2 * u_0 * u_m = 2 u_m, so u_m = -acc / 2
        u.c[static_cast<std::size_t>(m)] = F.mul(F.neg(acc), inv2);
    }
}

} // namespace

DirGroup::DirGroup(std::uint32_t q, int k) : F_(q), k_(k), kappa_(kappa_of(k)) {
    if (k < 1) throw std::invalid_argument("DirGroup: k must be >= 1");
    const std::uint64_t order = direction_group_order(q, k);
    if (order > 4000000ULL)
        throw budget_error("DirGroup: q^kappa = " + std::to_string(order) +
                           " exceeds the enumeration budget");
    elems_.reserve(order);
    for (std::uint64_t idx = 0; idx < order; ++idx) {
        Series u = series_one(k);
        std::uint64_t rest = idx;
        for (int m = 0; m < kappa_; ++m) {
            u.c[static_cast<std::size_t>(2 * m + 1)] = static_cast<std::uint32_t>(rest % q);
            rest /= q;
        }
        force_even_coeffs(F_, u);
        elems_.push_back(std::move(u));
    }
}

std::uint32_t DirGroup::index_of(const Series& u) const {
    if (u.k != k_) throw std::invalid_argument("DirGroup::index_of: wrong modulus");
    std::uint64_t idx = 0;
    for (int m = kappa_; m-- > 0;) idx = idx * F_.p() + u.at(static_cast<std::size_t>(2 * m + 1));
    if (idx >= elems_.size() || !(elems_[idx] == u))
        throw std::invalid_argument("DirGroup::index_of: not a norm-one element");
    return static_cast<std::uint32_t>(idx);
}

std::uint32_t DirGroup::mul(std::uint32_t i, std::uint32_t j) const {
    return index_of(series_mul(F_, elems_[i], elems_[j]));
}

std::uint32_t DirGroup::pow(std::uint32_t i, std::uint64_t e) const {
    return index_of(series_pow(F_, elems_[i], e));
}

std::uint32_t DirGroup::inverse(std::uint32_t i) const {
    return index_of(series_inverse(F_, elems_[i]));
}

std::uint64_t DirGroup::element_order(std::uint32_t i) const {
    // order divides q^kappa: raise to q until the identity appears
    std::uint64_t ord = 1;
    Series cur = elems_[i];
    const Series id = series_one(k_);
    while (!(cur == id)) {
        cur = series_pow(F_, cur, F_.p());
        ord *= F_.p();
    }
    return ord;
}

Series sqrt_in_group(const Fq& F, const Series& u) {
    const std::uint64_t order = direction_group_order(F.p(), u.k);
    return series_pow(F, u, (order + 1) / 2);
}

Series direction(const Fq& F, const Poly& f, int k) {
    if (f.constant() == 0)
        throw std::invalid_argument("direction: f(0) must be nonzero");
    const Series s = series_from_poly(F, f, k);
    const Series g = series_mul(F, s, series_inverse(F, sigma(F, s)));
    return sqrt_in_group(F, g);
}

bool same_sector(const Fq& F, const Poly& f, const Series& u, int k) {
    return direction(F, f, k) == u;
}

std::pair<Poly, Poly> poly_to_ab(const Fq& F, const Poly& f) {
    std::vector<std::uint32_t> A, B;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        const std::size_t m = i / 2;
        const bool neg = m % 2 == 1; // (-1)^m from S^2 = -T
        const std::uint32_t v = neg ? F.neg(f.c[i]) : f.c[i];
        auto& dst = i % 2 == 0 ? A : B;
        if (dst.size() <= m) dst.resize(m + 1, 0);
        dst[m] = v;
    }
    return {poly_trim(std::move(A)), poly_trim(std::move(B))};
}

Poly ab_to_poly(const Fq& F, const Poly& A, const Poly& B) {
    std::vector<std::uint32_t> c(2 * std::max(A.c.size(), B.c.size()) + 1, 0);
    for (std::size_t m = 0; m < A.c.size(); ++m)
        c[2 * m] = m % 2 ? F.neg(A.c[m]) : A.c[m];
    for (std::size_t m = 0; m < B.c.size(); ++m)
        c[2 * m + 1] = m % 2 ? F.neg(B.c[m]) : B.c[m];
    return poly_trim(std::move(c));
}

} // namespace primeangles::ff
