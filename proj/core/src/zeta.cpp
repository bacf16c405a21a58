#include "hz/zeta.hpp"

#include <cmath>

namespace hz {

namespace {

Complex pow_ns(double N, Complex e) {
    // N^{-e} for N > 1 via the real logarithm.
    return std::exp(-e * std::log(N));
}

WordCaps caps_from(const HeckeGroup& G, const TruncationSpec& t, Alphabet a) {
    WordCaps c;
    c.max_norm = t.norm_cutoff;
    c.max_exponent = t.exponent_cap;
    c.max_length = t.length_cap;
    (void)G;
    (void)a;
    return c;
}

/// Octave extrapolation of the class tail: take the absolute log-terms in
/// (X/2, X], assume one more octave multiplies the count by the observed
/// ratio and the terms by 2^{-sigma}.
double octave_tail(const ClassList& classes, Complex s, double X) {
    double sigma = s.real();
    double S_oct = 0;
    int c_hi = 0, c_lo = 0;
    for (const auto& rec : classes.classes) {
        if (rec.n != 1) continue;
        if (rec.N > X / 2) {
            S_oct += std::abs(pow_ns(rec.N, s)) / (1 - 1 / rec.N);
            ++c_hi;
        } else if (rec.N > X / 4) {
            ++c_lo;
        }
    }
    if (S_oct == 0) return 0;
    double rho = c_lo > 0 ? static_cast<double>(c_hi) / c_lo : 2.0;
    rho = std::min(std::max(rho, 1.0), 4.0);
    double r = rho * std::pow(2.0, -sigma);
    if (r > 0.95) return std::numeric_limits<double>::infinity();
    return 2.0 * S_oct * r / (1 - r); // factor 2: safety margin on the estimate
}

} // namespace

Complex tr_tau(double N, Complex s) {
    if (!(N > 1)) throw std::domain_error("tr_tau: norm must exceed 1");
    return pow_ns(N, s) / (1.0 - 1.0 / N);
}

Complex tr_tau(const ConjClassRecord& a, Complex s) { return tr_tau(a.N, s); }

Complex tr_b_pm(double N, int det, int k, Complex s, int parity_sign, bool q_even) {
    if (!(N > 1)) throw std::domain_error("tr_b_pm: norm must exceed 1");
    double w = q_even ? std::ldexp(1.0, -k) : 1.0;
    Complex denom = 1.0 - static_cast<double>(det) / N;
    Complex base = pow_ns(N, s) / denom;
    if (parity_sign < 0) return w * static_cast<double>(det) * base;
    return w * base;
}

Complex tr_b_pm(const ConjClassRecord& a, Complex s, int parity_sign, bool q_even) {
    return tr_b_pm(a.N, a.det, a.kcount, s, parity_sign, q_even);
}

TraceSum trace_power_sum(const HeckeGroup& G, int n, Complex s, int parity_sign,
                         const TruncationSpec& trunc) {
    if (!(s.real() > 0.5))
        throw std::domain_error("trace_power_sum: needs Re s > 1/2 for exponent tails");
    if (!trunc.tail_geometric)
        throw std::invalid_argument("trace_power_sum: truncated exponent sums need the "
                                    "geometric tail mode");
    int ecap = trunc.exponent_cap > 0 ? trunc.exponent_cap : 256;
    TraceSum out;
    double layer = 0; // sum of |terms| whose largest exponent equals the cap
    WordCaps caps;
    caps.max_exponent = ecap;
    enumerate_reduced_words(G, Alphabet::GQ, n, caps, [&](const Word& w, const BTags& t) {
        if (!(t.b1 || t.b4)) return;
        double N = word_norm(G, w);
        int det = word_det(w);
        auto [eps, k] = eps_and_k(G, w);
        (void)eps;
        Complex term = tr_b_pm(N, det, k, s, parity_sign, G.q_even);
        out.value += term;
        ++out.word_count;
        int emax = 0;
        for (const Letter& l : w.letters) emax = std::max(emax, l.exp);
        if (emax == ecap) layer += std::abs(term);
    });
    double sigma = s.real();
    out.tail_estimate = 2.0 * layer * ecap / (2 * sigma - 1);
    return out;
}

ZetaValue selberg_Z(const HeckeGroup& G, Complex s, const TruncationSpec& trunc,
                    const ClassList* pre) {
    if (!(s.real() > 1)) throw std::domain_error("selberg_Z: converges for Re s > 1 only");
    ClassList local;
    if (!pre) {
        local = enumerate_conj_classes(G, GroupTag::Gamma, trunc.norm_cutoff,
                                       caps_from(G, trunc, Alphabet::G));
        pre = &local;
    }
    ZetaValue out;
    out.truncation = trunc;
    out.certified = pre->certified;
    std::complex<long double> logv(0), prod(1);
    for (const auto& rec : pre->classes) {
        if (rec.n != 1) continue;
        // product over k and the equivalent class-power log sum
        for (int k = 0;; ++k) {
            Complex x = pow_ns(rec.N, s + Complex(k));
            if (std::abs(x) < 1e-18 || k > 400) break;
            prod *= std::complex<long double>(1.0 - x);
        }
        for (int j = 1;; ++j) {
            if (std::pow(rec.N, -j * s.real()) < 1e-18 || j > 400) break;
            double Nj = std::pow(rec.N, j);
            logv -= std::complex<long double>(tr_tau(Nj, s) / static_cast<double>(j));
        }
    }
    out.value = Complex(static_cast<double>(prod.real()), static_cast<double>(prod.imag()));
    out.log_value = Complex(static_cast<double>(logv.real()), static_cast<double>(logv.imag()));
    out.tail_estimate = octave_tail(*pre, s, trunc.norm_cutoff) * std::abs(out.value);
    return out;
}

ZetaValue Z_pm(const HeckeGroup& G, Complex s, int parity_sign, const TruncationSpec& trunc,
               const ClassList* pre_tilde) {
    if (!(s.real() > 1)) throw std::domain_error("Z_pm: converges for Re s > 1 only");
    ClassList local;
    if (!pre_tilde) {
        local = enumerate_conj_classes(G, GroupTag::GammaTilde, trunc.norm_cutoff,
                                       caps_from(G, trunc, Alphabet::GQ));
        pre_tilde = &local;
    }
    ZetaValue out;
    out.truncation = trunc;
    out.certified = pre_tilde->certified;
    std::complex<long double> logv(0), prod(1);
    for (const auto& rec : pre_tilde->classes) {
        if (rec.n != 1) continue;
        if (G.q_even && rec.boundary) continue;
        for (int k = 0;; ++k) {
            Complex x = pow_ns(rec.N, s + Complex(k));
            if (std::abs(x) < 1e-18 || k > 400) break;
            double detk = (rec.det == 1) ? 1.0
                                         : ((parity_sign > 0 ? k : k + 1) % 2 == 0 ? 1.0 : -1.0);
            std::complex<long double> f(1.0 - detk * x);
            prod *= f;
            logv += std::log(f);
        }
    }
    if (G.q_even) {
        double Nm = G.gen(G.m).norm();
        for (int l = 0;; ++l) {
            int shift = parity_sign > 0 ? 2 * l : 2 * l + 1;
            Complex x = pow_ns(Nm, s + Complex(shift));
            if (std::abs(x) < 1e-18 || l > 200) break;
            std::complex<long double> f(1.0 - x);
            prod *= f;
            logv += std::log(f);
        }
    }
    out.value = Complex(static_cast<double>(prod.real()), static_cast<double>(prod.imag()));
    out.log_value = Complex(static_cast<double>(logv.real()), static_cast<double>(logv.imag()));
    out.tail_estimate = octave_tail(*pre_tilde, s, trunc.norm_cutoff) * std::abs(out.value);
    return out;
}

ZetaValue ZV_pm(const HeckeGroup& G, Complex s, int parity_sign, const TruncationSpec& trunc,
                const ClassList* pre_gamma, const ClassList* pre_tilde) {
    if (!(s.real() > 1)) throw std::domain_error("ZV_pm: converges for Re s > 1 only");
    ClassList lg, lt;
    if (!pre_gamma) {
        lg = enumerate_conj_classes(G, GroupTag::Gamma, trunc.norm_cutoff,
                                    caps_from(G, trunc, Alphabet::G));
        pre_gamma = &lg;
    }
    if (!pre_tilde) {
        lt = enumerate_conj_classes(G, GroupTag::GammaTilde, trunc.norm_cutoff,
                                    caps_from(G, trunc, Alphabet::GQ));
        pre_tilde = &lt;
    }
    ZetaValue out;
    out.truncation = trunc;
    out.certified = pre_gamma->certified && pre_tilde->certified;
    std::complex<long double> logv(0);
    // squared Gamma_q Euler factors
    for (const auto& rec : pre_gamma->classes) {
        if (rec.n != 1) continue;
        for (int k = 0;; ++k) {
            Complex x = pow_ns(rec.N, s + Complex(k));
            if (std::abs(x) < 1e-18 || k > 400) break;
            logv += 2.0L * std::log(std::complex<long double>(1.0 - x));
        }
    }
    // reflection classes: det -1 primitives (non-boundary for even q)
    for (const auto& rec : pre_tilde->classes) {
        if (rec.n != 1 || rec.det != -1) continue;
        if (G.q_even && rec.boundary) continue;
        for (int l = 0;; ++l) {
            Complex x = pow_ns(rec.N, s + Complex(l));
            if (std::abs(x) < 1e-18 || l > 400) break;
            Complex ratio = parity_sign > 0 ? (1.0 - x) / (1.0 + x) : (1.0 + x) / (1.0 - x);
            long double expo = 2.0L * (l % 2 == 0 ? 1.0L : -1.0L);
            logv += expo * std::log(std::complex<long double>(ratio));
        }
    }
    if (G.q_even) {
        double Nq = G.Qgen(G.m).norm(); // equals N(g_m)
        for (int n = 0;; ++n) {
            Complex x = pow_ns(Nq, s + Complex(n));
            if (std::abs(x) < 1e-18 || n > 400) break;
            Complex ratio = parity_sign > 0 ? (1.0 - x) / (1.0 + x) : (1.0 + x) / (1.0 - x);
            long double expo = (n % 2 == 0 ? 1.0L : -1.0L);
            logv += expo * std::log(std::complex<long double>(ratio));
        }
    }
    out.log_value = Complex(static_cast<double>(logv.real()), static_cast<double>(logv.imag()));
    out.value = std::exp(out.log_value);
    double t1 = octave_tail(*pre_gamma, s, trunc.norm_cutoff);
    double t2 = octave_tail(*pre_tilde, s, trunc.norm_cutoff);
    out.tail_estimate = (2 * t1 + 4 * t2) * std::abs(out.value);
    return out;
}

ZetaValue Zc_pm(const HeckeGroup& G, Complex s, int parity_sign) {
    if (!G.q_even) throw std::domain_error("Zc_pm: defined for even q only");
    if (!(s.real() > 0)) throw std::domain_error("Zc_pm: converges for Re s > 0 only");
    double Nm = G.gen(G.m).norm();
    double A = Nm * Nm; // N(g_m^2)
    ZetaValue out;
    out.truncation = TruncationSpec{};
    Complex logv(0);
    Complex prod(1);
    for (int k = 0; k < 200; ++k) {
        Complex x = pow_ns(A, s + Complex(k));
        if (std::abs(x) < 1e-18) break;
        double expo = (k % 2 == 0 ? 1.0 : -1.0);
        if (parity_sign > 0) expo = -expo;
        Complex f = 1.0 - x;
        prod *= std::pow(f, expo);
        logv += expo * std::log(f);
    }
    out.value = prod;
    out.log_value = logv;
    out.tail_estimate = 1e-16 * std::abs(prod);
    return out;
}

} // namespace hz
