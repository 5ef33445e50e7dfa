#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "vwx/detect.hpp"

// Numerical check of the Fourier-side machinery: indicator transform,
// the sqrt(p) uniformity bound for subgroup spectra, and the counting
// identity N = (1/p) sum_k F(ak) F(bk) F(-ck mod p).

namespace vwx {

inline constexpr u64 kSpectralCeiling = 100000;  // direct evaluation scale

struct SpectrumReport {
    u64 p = 0;
    u64 n = 0;
    double max_nonzero_magnitude = 0.0;  // max over k != 0 of |F(k)|
    u64 max_k = 0;                       // a maximizing k
    double alpha = 0.0;                  // max_nonzero_magnitude / p
    bool uniformity_pass = false;        // alpha <= p^{-1/2} + 1e-9

    u64 solution_count_exact = 0;
    double solution_count_spectral = 0.0;
    double main_term = 0.0;    // delta^3 p^2, delta = (p-1)/(np)
    double error_bound = 0.0;  // alpha * delta * p^2
    bool identity_pass = false;
    bool error_term_pass = false;
};

// Forward transform F(k) = sum_{h in H} e(-2 pi i k h / p), all k in [0, p).
// F is constant on cosets kH, so only the index-many coset representatives
// need direct summation; the rest of the array is filled by walking g^i.
inline std::vector<std::complex<double>> dft_indicator(const Subgroup& sub) {
    const u64 p = sub.p();
    if (p > kSpectralCeiling)
        throw std::length_error(
            "dft_indicator: p above direct-evaluation scale; sample magnitudes "
            "at chosen k instead");
    const u64 n = sub.index();
    std::vector<std::complex<double>> root(p);
    for (u64 j = 0; j < p; ++j) {
        double t = -2.0 * std::numbers::pi * double(j) / double(p);
        root[j] = {std::cos(t), std::sin(t)};
    }
    // one representative g^j per coset, j = 0..n-1
    std::vector<std::complex<double>> coset_val(n);
    u64 rep = 1;
    for (u64 j = 0; j < n; ++j) {
        std::complex<double> s = 0.0;
        sub.for_each_element(
            [&](u64 h) { s += root[mul_mod(rep, h, p)]; });
        coset_val[j] = s;
        rep = mul_mod(rep, sub.ctx().g, p);
    }
    std::vector<std::complex<double>> out(p);
    out[0] = double(sub.order());
    u64 x = 1;
    for (u64 i = 0; i < p - 1; ++i) {
        out[x] = coset_val[i % n];
        x = mul_mod(x, sub.ctx().g, p);
    }
    return out;
}

namespace detail {

inline SpectrumReport uniformity_from(const Subgroup& sub,
                                      const std::vector<std::complex<double>>& F) {
    SpectrumReport rep;
    rep.p = sub.p();
    rep.n = sub.index();
    for (u64 k = 1; k < rep.p; ++k) {
        double mag = std::abs(F[k]);
        if (mag > rep.max_nonzero_magnitude) {
            rep.max_nonzero_magnitude = mag;
            rep.max_k = k;
        }
    }
    rep.alpha = rep.max_nonzero_magnitude / double(rep.p);
    rep.uniformity_pass =
        rep.alpha <= 1.0 / std::sqrt(double(rep.p)) + 1e-9;
    return rep;
}

}  // namespace detail

inline SpectrumReport verify_uniformity(const Subgroup& sub) {
    return detail::uniformity_from(sub, dft_indicator(sub));
}

inline SpectrumReport verify_count_identity(const Subgroup& sub,
                                            const Equation& eq) {
    auto F = dft_indicator(sub);
    SpectrumReport rep = detail::uniformity_from(sub, F);
    const u64 p = rep.p;
    rep.solution_count_exact = count_solutions(sub, eq);
    std::complex<double> acc = 0.0;
    for (u64 k = 0; k < p; ++k) {
        u64 ka = mul_mod(eq.a % p, k, p);
        u64 kb = mul_mod(eq.b % p, k, p);
        u64 kc = (p - mul_mod(eq.c % p, k, p)) % p;
        acc += F[ka] * F[kb] * F[kc];
    }
    rep.solution_count_spectral = acc.real() / double(p);
    double delta = double(sub.order()) / double(p);
    rep.main_term = delta * delta * delta * double(p) * double(p);
    rep.error_bound = rep.alpha * delta * double(p) * double(p);
    rep.identity_pass =
        std::abs(rep.solution_count_spectral -
                 double(rep.solution_count_exact)) <=
        1e-6 * std::max<double>(1.0, double(rep.solution_count_exact));
    rep.error_term_pass =
        std::abs(double(rep.solution_count_exact) - rep.main_term) <=
        rep.error_bound + 1e-6 * double(p) * double(p);
    return rep;
}

inline SpectrumReport verify_count_identity(const Subgroup& sub) {
    return verify_count_identity(sub, Equation::make(sub.p(), 1, 1, 2));
}

}  // namespace vwx
