#pragma once

#include "hz/words.hpp"

#include <complex>

namespace hz {

struct TruncationSpec {
    double norm_cutoff = 1e4;
    int exponent_cap = 0; // 0: certified default for the cutoff
    int length_cap = 0;   // 0: certified default
    bool tail_geometric = true;
};

struct ZetaValue {
    Complex value;
    Complex log_value;
    TruncationSpec truncation;
    double tail_estimate = 0;
    bool certified = true;
};

/// Tr tau_s(a) = N^{-s} / (1 - N^{-1}) for a hyperbolic of norm N > 1.
Complex tr_tau(double N, Complex s);
Complex tr_tau(const ConjClassRecord& a, Complex s);

/// Tr b_s^{+-}(a); the 1/2^k weight applies for even q only.
Complex tr_b_pm(double N, int det, int k, Complex s, int parity_sign, bool q_even);
Complex tr_b_pm(const ConjClassRecord& a, Complex s, int parity_sign, bool q_even);

struct TraceSum {
    Complex value;
    double tail_estimate = 0;
    long word_count = 0;
};

/// Sum of Tr b_s^{+-} over B_1^n cup B_4^n with exponents capped, plus a
/// geometric tail estimate for the dropped exponents. Needs Re s > 1/2.
TraceSum trace_power_sum(const HeckeGroup& G, int n, Complex s, int parity_sign,
                         const TruncationSpec& trunc);

/// Truncated Selberg zeta as Euler product over enumerated primitive
/// Gamma-classes; log_value is the equivalent class-power log sum.
ZetaValue selberg_Z(const HeckeGroup& G, Complex s, const TruncationSpec& trunc,
                    const ClassList* pre = nullptr);

/// Z_{+-} over extended-group primitive classes (even q: non-boundary
/// classes plus the closed-form g_m boundary factor).
ZetaValue Z_pm(const HeckeGroup& G, Complex s, int parity_sign, const TruncationSpec& trunc,
               const ClassList* pre_tilde = nullptr);

/// Venkov zeta functions for Dirichlet (-) / Neumann (+) boundary values.
ZetaValue ZV_pm(const HeckeGroup& G, Complex s, int parity_sign, const TruncationSpec& trunc,
                const ClassList* pre_gamma = nullptr, const ClassList* pre_tilde = nullptr);

/// Even-q correction zetas Z^c_{+-} (alternating-exponent products over
/// N(g_m^2)); absolutely convergent for Re s > 0.
ZetaValue Zc_pm(const HeckeGroup& G, Complex s, int parity_sign);

} // namespace hz
