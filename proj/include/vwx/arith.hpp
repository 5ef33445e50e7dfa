#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

// Exact modular arithmetic for moduli below 2^62, deterministic primality,
// factorization and least-primitive-root search.

namespace vwx {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

inline constexpr u64 kModulusCeiling = u64{1} << 62;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((u128)a * b % m);
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;  // a, b < m < 2^62, no wrap
    return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) {
    return a >= b ? a - b : a + m - b;
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m < 2) throw std::domain_error("pow_mod: modulus must be >= 2");
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all x < 2^64 with this witness set.
inline bool is_prime(u64 x) {
    if (x < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        if (x == p) return true;
        if (x % p == 0) return false;
    }
    u64 d = x - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        u64 v = pow_mod(a, d, x);
        if (v == 1 || v == x - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            v = mul_mod(v, v, x);
            if (v == x - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline u64 gcd_u64(u64 a, u64 b) {
    while (b) { u64 t = a % b; a = b; b = t; }
    return a;
}

// Brent's variant of Pollard rho. Input is an odd composite with no
// factor below the trial-division cutoff.
inline u64 rho_factor(u64 m) {
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1, saved = 2;
        u64 power = 1, lam = 1;
        auto step = [&](u64 v) { return add_mod(mul_mod(v, v, m), c % m, m); };
        while (d == 1) {
            if (power == lam) { x = y; power <<= 1; lam = 0; }
            u64 q = 1;
            u64 batch = 0;
            saved = y;
            while (lam < power && batch < 128) {
                y = step(y);
                ++lam;
                ++batch;
                q = mul_mod(q, sub_mod(x, y, m), m);
            }
            d = gcd_u64(q, m);
        }
        if (d == m) {
            // backtrack one step at a time
            u64 ys = saved;
            do {
                ys = step(ys);
                d = gcd_u64(sub_mod(x, ys, m), m);
            } while (d == 1);
        }
        if (d != m) return d;
    }
}

inline void factorize_into(u64 m, std::vector<u64>& out) {
    if (m == 1) return;
    if (is_prime(m)) { out.push_back(m); return; }
    u64 d = rho_factor(m);
    factorize_into(d, out);
    factorize_into(m / d, out);
}

}  // namespace detail

// Prime factorization with multiplicity, ascending. Trial division below
// 10^6, rho for what remains.
inline std::vector<u64> factorize(u64 m) {
    if (m < 2) throw std::domain_error("factorize: input must be >= 2");
    std::vector<u64> out;
    while ((m & 1) == 0) { out.push_back(2); m >>= 1; }
    for (u64 d = 3; d < 1000000 && d * d <= m; d += 2) {
        while (m % d == 0) { out.push_back(d); m /= d; }
    }
    if (m > 1) detail::factorize_into(m, out);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<u64> distinct_prime_factors(u64 m) {
    auto f = factorize(m);
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

// Least g in [2, p-1] of multiplicative order exactly p-1.
inline u64 primitive_root(u64 p) {
    if (p < 3 || !is_prime(p))
        throw std::domain_error("primitive_root: need an odd prime");
    auto qs = distinct_prime_factors(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 q : qs) {
            if (pow_mod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: exhausted candidates");  // unreachable
}

// A prime p together with its least primitive root and the factorization
// of p-1. The ambient group F_p^x for everything downstream.
struct PrimeContext {
    u64 p = 0;
    u64 g = 0;
    std::vector<u64> factors_p_minus_1;  // with multiplicity, ascending

    static PrimeContext make(u64 p) {
        if (p >= kModulusCeiling)
            throw std::domain_error("PrimeContext: modulus must be < 2^62");
        if (p < 3 || !is_prime(p))
            throw std::domain_error("PrimeContext: p must be an odd prime");
        PrimeContext ctx;
        ctx.p = p;
        ctx.g = primitive_root(p);
        ctx.factors_p_minus_1 = factorize(p - 1);
        return ctx;
    }
};

inline u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

}  // namespace vwx
