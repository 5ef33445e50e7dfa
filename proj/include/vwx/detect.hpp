#pragma once

#include <optional>
#include <tuple>

#include "vwx/subgroup.hpp"

// Nontrivial-solution detection for ax + by = cz inside H: the linear-time
// shifted-coset test, the quadratic naive oracle, and exact counting.

namespace vwx {

struct Equation {
    u64 a = 1, b = 1, c = 2;   // residues mod p, all nonzero
    bool trivial_family = true;  // a + b = c (mod p); (h,h,h) always solves

    static Equation make(u64 p, u64 a, u64 b, u64 c) {
        Equation eq;
        eq.a = a % p;
        eq.b = b % p;
        eq.c = c % p;
        if (eq.a == 0 || eq.b == 0 || eq.c == 0)
            throw std::domain_error("Equation: coefficient is 0 mod p");
        eq.trivial_family = (eq.a + eq.b) % p == eq.c;
        return eq;
    }
};

struct Witness {
    u64 x = 0, y = 0, z = 0;
};

struct DetectionOutcome {
    bool has_solution = false;
    std::optional<Witness> witness;
};

namespace detail {

inline void check_witness(const Subgroup& sub, const Equation& eq,
                          const Witness& w) {
    const u64 p = sub.p();
    bool ok = sub.is_member(w.x) && sub.is_member(w.y) && sub.is_member(w.z) &&
              add_mod(mul_mod(eq.a, w.x, p), mul_mod(eq.b, w.y, p), p) ==
                  mul_mod(eq.c, w.z, p) &&
              !(w.x == w.y && w.y == w.z);
    if (!ok) throw std::logic_error("detect: witness failed re-verification");
}

}  // namespace detail

// Linear-time test from the shifted-coset identity: a nontrivial solution
// exists iff some h in S has b^-1(c - a h) in S, where S = H \ {1} when
// a + b = c (mod p) and S = H otherwise. Witness is z-normalized (x, y, 1).
inline DetectionOutcome detect_fast(const Subgroup& sub, const Equation& eq) {
    const u64 p = sub.p();
    if (eq.a % p == 0 || eq.b % p == 0 || eq.c % p == 0)
        throw std::domain_error("detect: coefficient is 0 mod p");
    const u64 binv = inv_mod(eq.b % p, p);
    const bool skip_one = eq.trivial_family;
    DetectionOutcome out;
    sub.for_each_element([&](u64 h) {
        if (out.has_solution) return;
        if (skip_one && h == 1) return;
        u64 rhs = sub_mod(eq.c % p, mul_mod(eq.a % p, h, p), p);
        if (rhs == 0) return;
        u64 y = mul_mod(binv, rhs, p);
        if (!sub.is_member(y)) return;
        if (skip_one && y == 1) return;
        out.has_solution = true;
        out.witness = Witness{h, y, 1};
    });
    if (out.witness) detail::check_witness(sub, eq, *out.witness);
    return out;
}

// Quadratic oracle: double loop over (x, y) in H^2, z solved from the
// congruence. Witness is the first found in enumeration order, unnormalized.
inline DetectionOutcome detect_naive(const Subgroup& sub, const Equation& eq) {
    const u64 p = sub.p();
    if (eq.a % p == 0 || eq.b % p == 0 || eq.c % p == 0)
        throw std::domain_error("detect: coefficient is 0 mod p");
    const u64 cinv = inv_mod(eq.c % p, p);
    DetectionOutcome out;
    sub.for_each_element([&](u64 x) {
        if (out.has_solution) return;
        u64 ax = mul_mod(eq.a % p, x, p);
        sub.for_each_element([&](u64 y) {
            if (out.has_solution) return;
            u64 s = add_mod(ax, mul_mod(eq.b % p, y, p), p);
            u64 z = mul_mod(cinv, s, p);
            if (z != 0 && sub.is_member(z) && !(x == y && y == z)) {
                out.has_solution = true;
                out.witness = Witness{x, y, z};
            }
        });
    });
    if (out.witness) detail::check_witness(sub, eq, *out.witness);
    return out;
}

// N = #{(x,y,z) in H^3 : ax + by = cz}, trivial solutions included.
// Computed as |H| * #{(u,v) in H^2 : au + bv = c} via z-normalization.
inline u64 count_solutions(const Subgroup& sub, const Equation& eq) {
    const u64 p = sub.p();
    if (eq.a % p == 0 || eq.b % p == 0 || eq.c % p == 0)
        throw std::domain_error("count_solutions: coefficient is 0 mod p");
    const u64 binv = inv_mod(eq.b % p, p);
    u64 pairs = 0;
    sub.for_each_element([&](u64 u) {
        u64 rhs = sub_mod(eq.c % p, mul_mod(eq.a % p, u, p), p);
        if (rhs != 0 && sub.is_member(mul_mod(binv, rhs, p))) ++pairs;
    });
    return sub.order() * pairs;
}

// Exhaustive-scan variants for benchmarking: no early exit, both legs do
// complete O(|H|^2) resp. O(|H|) work regardless of where solutions sit.
inline bool detect_naive_full_scan(const Subgroup& sub, const Equation& eq) {
    const u64 p = sub.p();
    const u64 cinv = inv_mod(eq.c % p, p);
    // cH^-1 indicator: s in aH+bH solves iff s*c^-1 in H
    bool found = false;
    sub.for_each_element([&](u64 x) {
        u64 ax = mul_mod(eq.a % p, x, p);
        sub.for_each_element([&](u64 y) {
            u64 s = add_mod(ax, mul_mod(eq.b % p, y, p), p);
            u64 z = mul_mod(cinv, s, p);
            if (z != 0 && sub.is_member(z) && !(x == y && y == z)) found = true;
        });
    });
    return found;
}

inline bool detect_fast_full_scan(const Subgroup& sub, const Equation& eq) {
    const u64 p = sub.p();
    const u64 binv = inv_mod(eq.b % p, p);
    const bool skip_one = eq.trivial_family;
    bool found = false;
    sub.for_each_element([&](u64 h) {
        if (skip_one && h == 1) return;
        u64 rhs = sub_mod(eq.c % p, mul_mod(eq.a % p, h, p), p);
        if (rhs == 0) return;
        u64 y = mul_mod(binv, rhs, p);
        if (sub.is_member(y) && !(skip_one && y == 1)) found = true;
    });
    return found;
}

}  // namespace vwx
