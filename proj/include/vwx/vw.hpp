#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "vwx/detect.hpp"
#include "vwx/sieve.hpp"

// Exact computation of VW3x(n): guarantee bound from the explicit
// inequality, ascending scan of primes = 1 (mod n), last False->True
// transition.

namespace vwx {

namespace detail {

// 256-bit compare of a*b vs c*d, operands up to 128 bits.
inline int cmp_prod(u128 a, u128 b, u128 c, u128 d) {
    auto mul = [](u128 x, u128 y, u128& hi, u128& lo) {
        u64 x0 = (u64)x, x1 = (u64)(x >> 64);
        u64 y0 = (u64)y, y1 = (u64)(y >> 64);
        u128 p00 = (u128)x0 * y0;
        u128 p01 = (u128)x0 * y1;
        u128 p10 = (u128)x1 * y0;
        u128 p11 = (u128)x1 * y1;
        u128 mid = (p00 >> 64) + (u64)p01 + (u64)p10;
        lo = ((u128)(u64)mid << 64) | (u64)p00;
        hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    };
    u128 ahi, alo, chi, clo;
    mul(a, b, ahi, alo);
    mul(c, d, chi, clo);
    if (ahi != chi) return ahi < chi ? -1 : 1;
    if (alo != clo) return alo < clo ? -1 : 1;
    return 0;
}

// (p-1)^2 >= n^2 p (1 + sqrt(p)) for the trivial family (a+b=c over Z),
// (p-1)^2 >= n^2 p^{3/2} otherwise. Both sides squared, exact integers.
inline bool bound_inequality_holds(u64 n, u64 p, bool trivial_family) {
    u128 n2 = (u128)n * n;
    u128 p3 = (u128)p * p * p;  // callers keep p below ~2^42
    u128 n4 = n2 * n2;
    if (trivial_family) {
        u128 lhs = (u128)(p - 1) * (p - 1);
        u128 slack = n2 * p;
        if (lhs < slack) return false;
        u128 l = lhs - slack;
        return cmp_prod(l, l, n4, p3) >= 0;
    }
    u128 sq = (u128)(p - 1) * (p - 1);
    return cmp_prod(sq, sq, n4, p3) >= 0;
}

}  // namespace detail

// Least integer P such that the guarantee inequality holds for all p >= P.
// Binary search on the (eventually monotone) predicate, with the boundary
// re-checked on both sides.
inline u64 guarantee_bound(u64 n, bool trivial_family) {
    if (n < 2) throw std::domain_error("guarantee_bound: n must be >= 2");
    if (n > 2000000)
        throw std::domain_error("guarantee_bound: n too large for exact 256-bit check");
    auto pred = [&](u64 p) {
        return detail::bound_inequality_holds(n, p, trivial_family);
    };
    u64 hi = 4;
    while (!pred(hi)) hi *= 2;
    u64 lo = 2;  // invariant: pred false at lo (or lo == 2), true at hi
    if (pred(2)) return 2;
    while (hi - lo > 1) {
        u64 mid = lo + (hi - lo) / 2;
        (pred(mid) ? hi : lo) = mid;
    }
    if (!pred(hi) || pred(hi - 1) || !pred(hi + 1))
        throw std::logic_error("guarantee_bound: boundary not monotone");
    return hi;
}

inline u64 guarantee_bound(u64 n, u64 a, u64 b, u64 c) {
    return guarantee_bound(n, a + b == c);
}

struct VwResult {
    u64 n = 0;
    u64 p0 = 1;                // Algorithm output; 1 if no transition fired
    u64 bound = 0;             // guarantee threshold P(n)
    u64 scan_limit = 0;        // largest prime actually scanned
    u64 primes_scanned = 0;
    std::vector<u64> exceptional_primes;       // scanned primes with no solution
    std::vector<std::pair<u64, bool>> history;  // (p, has_solution), ascending
    u64 a = 1, b = 1, c = 2;
    bool certified = false;    // scan reached the guarantee bound
};

namespace detail {

// fn(i) for i in [0, count), fanned across `workers` threads. Results must
// be written to index-addressed slots so the outcome is order-independent.
inline void parallel_for_index(u64 count, unsigned workers,
                               const std::function<void(u64)>& fn) {
    if (workers <= 1 || count < 2) {
        for (u64 i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<u64> next{0};
    std::vector<std::thread> pool;
    unsigned t = std::min<u64>(workers, count);
    std::exception_ptr err;
    std::mutex err_mu;
    auto body = [&] {
        for (;;) {
            u64 i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    for (unsigned k = 0; k < t; ++k) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

inline bool prime_has_solution(u64 p, u64 n, u64 a, u64 b, u64 c) {
    auto ctx = PrimeContext::make(p);
    Subgroup sub(ctx, n);
    auto eq = Equation::make(p, a, b, c);
    return detect_fast(sub, eq).has_solution;
}

}  // namespace detail

// Algorithm scan. Default equation x + y = 2z. The scan runs over primes
// = 1 (mod n) up to and including the first prime at or past the guarantee
// bound (or up to bound_override, flagged uncertified when it under-scans).
inline VwResult compute_vw(u64 n, u64 a = 1, u64 b = 1, u64 c = 2,
                           std::optional<u64> bound_override = std::nullopt,
                           unsigned workers = 1) {
    if (n < 2) throw std::domain_error("compute_vw: n must be >= 2");
    if (a == 0 || b == 0 || c == 0)
        throw std::domain_error("compute_vw: coefficients must be positive");
    VwResult res;
    res.n = n;
    res.a = a;
    res.b = b;
    res.c = c;
    res.bound = guarantee_bound(n, a + b == c);

    const u64 coeff_max = std::max({a, b, c});
    std::vector<u64> primes;
    if (bound_override) {
        primes = primes_in_ap(n, *bound_override);
        res.certified = *bound_override >= res.bound;
    } else {
        // all class-1 primes below the bound, plus the first at or past it
        // so the certificate prime is part of the output
        u64 limit = res.bound;
        for (;;) {
            primes = primes_in_ap(n, limit);
            bool have_cert = !primes.empty() && primes.back() >= res.bound;
            if (have_cert) break;
            limit = limit + std::max<u64>(limit / 2, n + 1);
        }
        while (primes.size() >= 2 && primes[primes.size() - 2] >= res.bound)
            primes.pop_back();
        res.certified = true;
    }
    // the equation needs p > a, b, c
    std::erase_if(primes, [&](u64 p) { return p <= coeff_max; });
    if (primes.empty())
        throw std::domain_error("compute_vw: no primes = 1 (mod n) in range");

    std::vector<std::uint8_t> sol(primes.size(), 0);
    detail::parallel_for_index(primes.size(), workers, [&](u64 i) {
        sol[i] = detail::prime_has_solution(primes[i], n, a, b, c) ? 1 : 0;
    });

    bool prev = false;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        bool cur = sol[i] != 0;
        if (cur && !prev) res.p0 = primes[i];
        if (!cur) res.exceptional_primes.push_back(primes[i]);
        res.history.emplace_back(primes[i], cur);
        prev = cur;
    }
    res.primes_scanned = primes.size();
    res.scan_limit = primes.back();
    if (res.certified && sol.back() == 0)
        throw std::logic_error(
            "compute_vw: certificate prime has no solution (implementation bug)");
    return res;
}

struct ScanRow {
    u64 n = 0;
    std::optional<VwResult> result;
    std::string error;  // nonempty on per-n failure
};

inline std::vector<ScanRow> scan_range(u64 n_from, u64 n_to, u64 a = 1,
                                       u64 b = 1, u64 c = 2,
                                       unsigned workers = 1) {
    if (n_from < 2 || n_from > n_to)
        throw std::domain_error("scan_range: need 2 <= n_from <= n_to");
    std::vector<ScanRow> rows;
    for (u64 n = n_from; n <= n_to; ++n) {
        ScanRow row;
        row.n = n;
        try {
            row.result = compute_vw(n, a, b, c, std::nullopt, workers);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace vwx
