#include "primeangles/gaussian.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "primeangles/common.hpp"
#include "primeangles/manifest.hpp"
#include "primeangles/sieve.hpp"

namespace primeangles {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) {
    if (m <= (u64{1} << 32)) return (a * b) % m;
    return static_cast<u64>((u128)a * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Tonelli-Shanks square root of a mod an odd prime p; returns 0 if a is a
// non-residue.  Deterministic: the auxiliary non-residue is the smallest one.
u64 tonelli_shanks(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (powmod(a, (p - 1) / 2, p) != 1) return 0;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);

    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }

    u64 n = 2;
    while (powmod(n, (p - 1) / 2, p) != p - 1) ++n;

    u64 m = s;
    u64 c = powmod(n, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        u64 i = 0;
        while (t2 != 1) { t2 = mulmod(t2, t2, p); ++i; }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return r;
}

u64 isqrt_floor(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kQuarterPi = std::numbers::pi / 4.0;

} // namespace

std::pair<std::uint32_t, std::uint32_t> decompose_split_prime(std::uint64_t p) {
    if (p % 4 != 1 || p < 5)
        throw std::invalid_argument("decompose_split_prime: p must be a prime = 1 mod 4");

    u64 z = tonelli_shanks(p - 1, p); // sqrt(-1) mod p
    if (z == 0 || mulmod(z, z, p) != p - 1)
        throw std::invalid_argument("decompose_split_prime: p is not prime");
    if (z > p / 2) z = p - z;

    // Hermite-Serret: Euclid on (p, z); the first remainder below sqrt(p)
    // and its successor are the legs of the representation.
    const u64 root = isqrt_floor(p);
    u64 prev = p, cur = z;
    while (cur > root) {
        u64 nxt = prev % cur;
        prev = cur;
        cur = nxt;
    }
    u64 a = cur;
    u64 b = prev % cur;
    if (a < b) std::swap(a, b);
    if (a * a + b * b != p)
        throw std::invalid_argument("decompose_split_prime: descent failed (composite p?)");
    return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
}

std::vector<PrimeAngle> prime_ideal_angles(std::uint64_t x, bool split_only) {
    if (x < 2) throw std::invalid_argument("prime_ideal_angles: x must be >= 2");
    const std::vector<u64> primes = sieve_primes(x);
    const u64 root = isqrt_floor(x);

    // records per prime: ramified 1, split 2, inert 1 (only when p^2 <= x)
    std::size_t count = 0;
    for (u64 p : primes) {
        if (p == 2) count += split_only ? 0 : 1;
        else if (p % 4 == 1) count += 2;
        else if (p <= root && !split_only) count += 1;
    }

    if (count * sizeof(PrimeAngle) > budget_bytes())
        throw budget_error("prime_ideal_angles: record buffer exceeds budget");

    std::vector<PrimeAngle> out(count);
    std::vector<std::size_t> slot(primes.size() + 1, 0);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const u64 p = primes[i];
        std::size_t c = 0;
        if (p == 2) c = split_only ? 0 : 1;
        else if (p % 4 == 1) c = 2;
        else if (p <= root && !split_only) c = 1;
        slot[i + 1] = slot[i] + c;
    }

    auto fill_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const u64 p = primes[i];
            std::size_t at = slot[i];
            if (slot[i + 1] == at) continue;
            if (p == 2) {
                out[at] = {2, kQuarterPi, IdealKind::Ramified, 1, 1};
            } else if (p % 4 == 1) {
                auto [a, b] = decompose_split_prime(p); // a > b
                const double theta = std::atan2(static_cast<double>(b), static_cast<double>(a));
                out[at] = {p, theta, IdealKind::Split, a, b};
                out[at + 1] = {p, kHalfPi - theta, IdealKind::Split, b, a};
            } else {
                out[at] = {p * p, 0.0, IdealKind::Inert, static_cast<std::uint32_t>(p), 0};
            }
        }
    };

    const unsigned workers = primes.size() > 100000 ? std::min(worker_threads(), 8u) : 1u;
    if (workers <= 1) {
        fill_range(0, primes.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (primes.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(primes.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(fill_range, lo, hi);
        }
        for (auto& t : pool) t.join();
    }
    return out;
}

std::vector<PrimePowerRecord> prime_power_records(const std::vector<PrimeAngle>& ideals,
                                                  std::uint64_t X) {
    std::vector<PrimePowerRecord> out;
    for (const PrimeAngle& pa : ideals) {
        if (pa.norm > X) continue;
        const double lam = std::log(static_cast<double>(pa.norm));
        u64 n = pa.norm;
        for (unsigned r = 1;; ++r) {
            double ang = std::fmod(r * pa.angle, kHalfPi);
            out.push_back({n, ang, lam});
            if (n > X / pa.norm) break;
            n *= pa.norm;
        }
    }
    return out;
}

std::vector<PrimePowerRecord> prime_power_records(std::uint64_t X, bool split_only) {
    if (X < 2) throw std::invalid_argument("prime_power_records: X must be >= 2");
    return prime_power_records(prime_ideal_angles(X, split_only), X);
}

namespace {

constexpr char kCacheMagic[6] = {'G', 'P', 'A', 'N', '1', '\0'};

template <class T>
void put(std::string& buf, T v) {
    char tmp[sizeof(T)];
    std::memcpy(tmp, &v, sizeof(T));
    buf.append(tmp, sizeof(T));
}

template <class T>
T get(const char*& p) {
    T v;
    std::memcpy(&v, p, sizeof(T));
    p += sizeof(T);
    return v;
}

} // namespace

void save_angle_cache(const std::string& path, std::uint64_t x,
                      const std::vector<PrimeAngle>& records) {
    std::string buf;
    buf.reserve(22 + records.size() * 25);
    buf.append(kCacheMagic, 6);
    put<u64>(buf, x);
    put<u64>(buf, records.size());
    for (const PrimeAngle& r : records) {
        put<u64>(buf, r.norm);
        put<double>(buf, r.angle);
        put<std::uint8_t>(buf, static_cast<std::uint8_t>(r.kind));
        put<std::uint32_t>(buf, r.a);
        put<std::uint32_t>(buf, r.b);
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("save_angle_cache: cannot open " + path);
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::vector<PrimeAngle> load_angle_cache(const std::string& path, std::uint64_t* x_out) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_angle_cache: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (buf.size() < 22 || std::memcmp(buf.data(), kCacheMagic, 6) != 0)
        throw std::runtime_error("load_angle_cache: bad magic in " + path);
    const char* p = buf.data() + 6;
    const u64 x = get<u64>(p);
    const u64 n = get<u64>(p);
    if (buf.size() != 22 + n * 25)
        throw std::runtime_error("load_angle_cache: truncated file " + path);
    if (x_out) *x_out = x;
    std::vector<PrimeAngle> out(n);
    for (u64 i = 0; i < n; ++i) {
        out[i].norm = get<u64>(p);
        out[i].angle = get<double>(p);
        out[i].kind = static_cast<IdealKind>(get<std::uint8_t>(p));
        out[i].a = get<std::uint32_t>(p);
        out[i].b = get<std::uint32_t>(p);
    }
    return out;
}

} // namespace primeangles
