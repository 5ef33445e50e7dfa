#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "vwx/arith.hpp"

// Segmented prime generation, plain and restricted to the class 1 mod n.

namespace vwx {

inline u64 sieve_segment_size() {
    if (const char* env = std::getenv("VWX_SEGMENT_SIZE")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v >= 64) return static_cast<u64>(v);
    }
    return u64{1} << 20;
}

namespace detail {

// Odd base primes <= sqrt(limit), by a plain sieve.
inline std::vector<u64> base_primes(u64 limit) {
    u64 r = 1;
    while ((r + 1) * (r + 1) <= limit) ++r;
    std::vector<bool> comp(r + 1, false);
    std::vector<u64> out;
    for (u64 i = 3; i <= r; i += 2) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= r; j += 2 * i) comp[j] = true;
    }
    return out;
}

}  // namespace detail

// Calls fn(p) for every prime p <= limit, ascending. Memory stays
// O(segment + sqrt(limit)).
inline void for_each_prime(u64 limit, const std::function<void(u64)>& fn) {
    if (limit < 2) return;
    fn(2);
    if (limit < 3) return;
    auto base = detail::base_primes(limit);
    const u64 seg = sieve_segment_size();
    std::vector<std::uint8_t> flags;
    for (u64 lo = 3; lo <= limit; lo += seg) {
        u64 hi = std::min(limit + 1, lo + seg);  // [lo, hi)
        flags.assign(hi - lo, 0);
        for (u64 q : base) {
            u64 start = std::max(q * q, ((lo + q - 1) / q) * q);
            if ((start & 1) == 0) start += q;  // odd multiples only
            for (u64 j = start; j < hi; j += 2 * q) flags[j - lo] = 1;
        }
        for (u64 v = lo | 1; v < hi; v += 2)
            if (!flags[v - lo]) fn(v);
    }
}

inline std::vector<u64> primes_up_to(u64 limit) {
    if (limit < 2) throw std::domain_error("primes_up_to: limit must be >= 2");
    std::vector<u64> out;
    for_each_prime(limit, [&](u64 p) { out.push_back(p); });
    return out;
}

// Primes p <= limit with p = 1 (mod n), ascending.
inline std::vector<u64> primes_in_ap(u64 n, u64 limit) {
    if (n < 2) throw std::domain_error("primes_in_ap: n must be >= 2");
    std::vector<u64> out;
    if (limit < 2) return out;
    for_each_prime(limit, [&](u64 p) {
        if (p % n == 1) out.push_back(p);
    });
    return out;
}

// Sum of primes p <= limit, p = 1 (mod n). Sums near the 10^10 limit
// overflow 64 bits, hence the wide accumulator.
inline u128 prime_sum_in_ap(u64 n, u64 limit) {
    if (n < 2) throw std::domain_error("prime_sum_in_ap: n must be >= 2");
    u128 sum = 0;
    if (limit >= 2)
        for_each_prime(limit, [&](u64 p) {
            if (p % n == 1) sum += p;
        });
    return sum;
}

inline std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

// Euler totient via factorize.
inline u64 totient(u64 n) {
    if (n == 1) return 1;
    u64 r = n;
    for (u64 q : distinct_prime_factors(n)) r = r / q * (q - 1);
    return r;
}

}  // namespace vwx
