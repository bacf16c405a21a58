#include "hz/scan.hpp"

#include "hz/hurwitz.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace hz {

namespace {

bool in_pole_zone(Complex s) {
    // Simple poles of the continued operator live at s = (1-k)/2, k >= 0.
    if (std::fabs(s.imag()) > 1e-6) return false;
    double v = 1 - 2 * s.real(); // = k at a pole
    return v > -1e-6 && std::fabs(v - std::round(v)) < 2e-6;
}

Charts charts_for(const HeckeGroup& G, const ScanOptions& opts) {
    return build_charts(G, opts.basis_size, opts.disk_margin);
}

Parity parity_of(int sign) { return sign > 0 ? Parity::plus : Parity::minus; }

Complex det_with_charts(const HeckeGroup& G, int parity_sign, Complex s, const Charts& ch,
                        const ScanOptions& opts) {
    BuildOptions b;
    b.precision = opts.precision;
    OperatorMatrix M = build_fast_operator(G, s, parity_of(parity_sign), ch, b);
    return fredholm_det(M).value;
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    int workers = std::min(threads, n);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace

Complex det_at(const HeckeGroup& G, int parity_sign, Complex s, const ScanOptions& opts) {
    Charts ch = charts_for(G, opts);
    return det_with_charts(G, parity_sign, s, ch, opts);
}

Complex det_full_at(const HeckeGroup& G, Complex s, const ScanOptions& opts) {
    Charts ch = charts_for(G, opts);
    BuildOptions b;
    b.precision = opts.precision;
    OperatorMatrix M = build_fast_operator(G, s, Parity::full, ch, b);
    return fredholm_det(M).value;
}

std::vector<ScanSample> scan_line(const HeckeGroup& G, int parity_sign, double sigma, double t_min,
                                  double t_max, double step, const ScanOptions& opts) {
    if (!(sigma > 0 && sigma < 1)) throw std::invalid_argument("scan_line: sigma must be in (0,1)");
    if (!(step > 0)) throw std::invalid_argument("scan_line: step must be positive");
    std::vector<ScanSample> out;
    if (t_max < t_min) return out;
    Charts ch = charts_for(G, opts);
    int n = static_cast<int>(std::floor((t_max - t_min) / step + 1e-12)) + 1;
    out.resize(static_cast<size_t>(n));
    parallel_for(n, opts.threads, [&](int i) {
        Complex s(sigma, t_min + i * step);
        ScanSample smp;
        smp.s = s;
        if (in_pole_zone(s)) {
            smp.skipped = true;
        } else {
            smp.det = det_with_charts(G, parity_sign, s, ch, opts);
        }
        out[static_cast<size_t>(i)] = smp;
    });
    return out;
}

int winding_count(const HeckeGroup& G, int parity_sign, const Rect& rect, int samples_per_edge,
                  const ScanOptions& opts) {
    if (samples_per_edge < 4) throw std::invalid_argument("winding_count: need >= 4 samples/edge");
    Charts ch = charts_for(G, opts);
    std::vector<Complex> pts;
    auto push_edge = [&](Complex a, Complex b) {
        for (int i = 0; i < samples_per_edge; ++i) {
            double t = static_cast<double>(i) / samples_per_edge;
            pts.push_back(a + t * (b - a));
        }
    };
    Complex c1(rect.re_lo, rect.im_lo), c2(rect.re_hi, rect.im_lo);
    Complex c3(rect.re_hi, rect.im_hi), c4(rect.re_lo, rect.im_hi);
    push_edge(c1, c2);
    push_edge(c2, c3);
    push_edge(c3, c4);
    push_edge(c4, c1);
    for (const Complex& s : pts)
        if (in_pole_zone(s))
            throw ScanError("winding_count: rectangle boundary passes a pole point");

    int n = static_cast<int>(pts.size());
    std::vector<Complex> dets(pts.size());
    parallel_for(n, opts.threads, [&](int i) {
        dets[static_cast<size_t>(i)] = det_with_charts(G, parity_sign, pts[static_cast<size_t>(i)], ch, opts);
    });
    double minmod = std::numeric_limits<double>::infinity();
    for (const Complex& d : dets) minmod = std::min(minmod, std::abs(d));
    if (!(minmod > 1e-13))
        throw ScanError("winding_count: boundary too close to a zero; move the rectangle");
    double total = 0;
    for (size_t i = 0; i < dets.size(); ++i) {
        Complex a = dets[i], b = dets[(i + 1) % dets.size()];
        double d = std::arg(b / a);
        if (std::fabs(d) > 2.5)
            throw ScanError("winding_count: phase step unresolved; raise samples_per_edge");
        total += d;
    }
    double w = total / (2 * M_PI);
    double r = std::round(w);
    if (std::fabs(w - r) > 0.1)
        throw ScanError("winding_count: winding not integral within 0.1");
    return static_cast<int>(r);
}

namespace {

SpectralZero refine_with(const HeckeGroup& G, int parity_sign, Complex seed,
                         const ScanOptions& opts, bool want_stability) {
    Charts ch = charts_for(G, opts);
    Complex s0 = seed;
    Complex s1 = seed + Complex(1e-4, 1e-4);
    Complex d0 = det_with_charts(G, parity_sign, s0, ch, opts);
    Complex d1 = det_with_charts(G, parity_sign, s1, ch, opts);
    double scale = std::max({std::abs(d0), std::abs(d1), 1e-300});
    Complex best_s = std::abs(d0) < std::abs(d1) ? s0 : s1;
    double best_d = std::min(std::abs(d0), std::abs(d1));
    std::ostringstream trace;
    bool conv = false;
    for (int it = 0; it < 60; ++it) {
        if (std::abs(d1 - d0) == 0.0) break;
        Complex step = d1 * (s1 - s0) / (d1 - d0);
        if (std::abs(step) > 0.2) step *= 0.2 / std::abs(step);
        Complex s2 = s1 - step;
        s0 = s1;
        d0 = d1;
        s1 = s2;
        d1 = det_with_charts(G, parity_sign, s1, ch, opts);
        trace << "  it " << it << ": s = " << s1.real() << "+" << s1.imag()
              << "i |det| = " << std::abs(d1) << "\n";
        scale = std::max(scale, std::abs(d1));
        if (std::abs(d1) < best_d) { best_d = std::abs(d1); best_s = s1; }
        if (std::abs(d1) <= 1e-10 * scale && std::abs(s1 - s0) < 1e-9) { conv = true; break; }
        // stationary iteration: the det sits at its evaluation noise floor
        if (std::abs(s1 - s0) < 1e-12 * std::max(1.0, std::abs(s1))) { conv = true; break; }
    }
    if (!conv && !(best_d <= 1e-8 * scale))
        throw ScanError("refine_zero: secant did not converge near seed " +
                        std::to_string(seed.real()) + "+" + std::to_string(seed.imag()) +
                        "i; trace:\n" + trace.str());

    SpectralZero z;
    z.s = best_s;
    z.parity_sign = parity_sign;
    z.refinement_residual = best_d / scale;
    z.eigenvalue = (best_s * (Complex(1) - best_s)).real();
    if (want_stability) {
        ScanOptions big = opts;
        big.basis_size = 2 * opts.basis_size;
        SpectralZero z2 = refine_with(G, parity_sign, best_s, big, false);
        z.basis_stability = std::abs(z2.s - best_s);
    }
    double dr = 0.04, di = 0.08;
    try {
        z.winding = winding_count(G, parity_sign,
                                  Rect{best_s.real() - dr, best_s.real() + dr,
                                       best_s.imag() - di, best_s.imag() + di},
                                  32, opts);
    } catch (const ScanError&) {
        z.winding = winding_count(G, parity_sign,
                                  Rect{best_s.real() - dr / 2, best_s.real() + dr / 2,
                                       best_s.imag() - di / 2, best_s.imag() + di / 2},
                                  64, opts);
    }
    return z;
}

} // namespace

SpectralZero refine_zero(const HeckeGroup& G, int parity_sign, Complex seed,
                         const ScanOptions& opts) {
    return refine_with(G, parity_sign, seed, opts, true);
}

SpectrumReport report_spectrum(const HeckeGroup& G, int parity_sign, double t_max,
                               const ScanOptions& opts) {
    SpectrumReport rep;
    const double step = 0.05;
    auto samples = scan_line(G, parity_sign, 0.5, 0.25, t_max, step, opts);
    // dip candidates: local minima of |det| below the running scale
    std::vector<double> mod(samples.size(), std::numeric_limits<double>::infinity());
    double scale = 0;
    for (size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].skipped) continue;
        mod[i] = std::abs(samples[i].det);
        scale = std::max(scale, mod[i]);
    }
    for (size_t i = 1; i + 1 < samples.size(); ++i) {
        if (!(mod[i] < mod[i - 1] && mod[i] <= mod[i + 1])) continue;
        if (!(mod[i] < 0.2 * scale)) continue;
        try {
            SpectralZero z = refine_zero(G, parity_sign, samples[i].s, opts);
            if (z.s.imag() < 0.2 || z.s.imag() > t_max + step) continue;
            bool dup = false;
            for (const auto& prev : rep.zeros)
                if (std::abs(prev.s - z.s) < 1e-4) dup = true;
            if (!dup) rep.zeros.push_back(z);
        } catch (const ScanError&) {
            // dip did not certify; skip
        }
    }
    std::sort(rep.zeros.begin(), rep.zeros.end(),
              [](const SpectralZero& a, const SpectralZero& b) { return a.s.imag() < b.s.imag(); });

    if (parity_sign > 0) {
        // real-axis sweep: zeros with Re s in (1/2, 1) are resonances /
        // zeros of Z, not cusp forms.
        Charts ch = charts_for(G, opts);
        double lo = 0.55, hi = 0.98, h = 0.01;
        double prev_re = 0;
        bool have_prev = false;
        for (double x = lo; x <= hi + 1e-12; x += h) {
            Complex d = det_with_charts(G, parity_sign, Complex(x, 0), ch, opts);
            if (have_prev && prev_re * d.real() < 0) {
                // bisect
                double a = x - h, b = x;
                for (int it = 0; it < 50; ++it) {
                    double m = (a + b) / 2;
                    Complex dm = det_with_charts(G, parity_sign, Complex(m, 0), ch, opts);
                    if (dm.real() * prev_re <= 0) b = m; else a = m;
                }
                SpectralZero z;
                z.s = Complex((a + b) / 2, 0);
                z.parity_sign = parity_sign;
                z.winding = 1;
                z.eigenvalue = (z.s * (Complex(1) - z.s)).real();
                rep.resonances.push_back(z);
            }
            prev_re = d.real();
            have_prev = true;
        }
    }
    return rep;
}

} // namespace hz
