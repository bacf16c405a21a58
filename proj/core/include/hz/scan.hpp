#pragma once

#include "hz/transfer.hpp"

#include <vector>

namespace hz {

struct ScanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScanOptions {
    int basis_size = 40;
    double disk_margin = 0.25;
    Precision precision = Precision::f64;
    int threads = 1;
};

struct ScanSample {
    Complex s;
    Complex det;
    bool skipped = false; // pole-zone grid point
};

struct SpectralZero {
    Complex s;
    int parity_sign = -1; // +1 / -1
    int winding = 0;
    double refinement_residual = 0; // |det| / local det scale
    double basis_stability = 0;     // |shift| under N -> 2N
    double eigenvalue = 0;          // Re of s(1-s)
};

struct Rect {
    double re_lo, re_hi, im_lo, im_hi;
};

/// |det| and arg(det) samples of det(1 - L^{parity}) on a horizontal line
/// Re s = sigma; grid points inside the pole exclusion zone are skipped.
std::vector<ScanSample> scan_line(const HeckeGroup& G, int parity_sign, double sigma, double t_min,
                                  double t_max, double step, const ScanOptions& opts = {});

/// Winding number of det(1 - L^{parity}) around 0 along the rectangle
/// boundary; throws ScanError when the sampled phase increments or the
/// boundary modulus do not resolve an integer.
int winding_count(const HeckeGroup& G, int parity_sign, const Rect& rect, int samples_per_edge,
                  const ScanOptions& opts = {});

/// Complex secant refinement from a seed; fills winding (unit rectangle
/// around the zero), residual and the N -> 2N stability.
SpectralZero refine_zero(const HeckeGroup& G, int parity_sign, Complex seed,
                         const ScanOptions& opts = {});

struct SpectrumReport {
    std::vector<SpectralZero> zeros;
    std::vector<SpectralZero> resonances; // off-line real zeros (parity +), not cusp forms
};

/// End-to-end scan + winding + refinement on the critical line up to
/// t_max (and a real-axis sweep for parity +).
SpectrumReport report_spectrum(const HeckeGroup& G, int parity_sign, double t_max,
                               const ScanOptions& opts = {});

/// det(1 - L^{parity}) at a single point (convenience).
Complex det_at(const HeckeGroup& G, int parity_sign, Complex s, const ScanOptions& opts = {});
Complex det_full_at(const HeckeGroup& G, Complex s, const ScanOptions& opts = {});

} // namespace hz
