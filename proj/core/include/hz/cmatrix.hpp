#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace hz {

/// Dense complex matrix, row-major. Small sizes only (collocation blocks);
/// a pivoted LU provides determinants of I - M.
template <class Real>
struct CMat {
    using C = std::complex<Real>;
    int rows = 0, cols = 0;
    std::vector<C> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    C& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const C& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = C(1);
        return m;
    }

    CMat mul(const CMat& o) const {
        if (cols != o.rows) throw std::invalid_argument("CMat::mul: shape mismatch");
        CMat out(rows, o.cols);
        for (int i = 0; i < rows; ++i) {
            for (int k = 0; k < cols; ++k) {
                C v = (*this)(i, k);
                if (v == C(0)) continue;
                const C* src = &o.a[static_cast<size_t>(k) * o.cols];
                C* dst = &out.a[static_cast<size_t>(i) * o.cols];
                for (int j = 0; j < o.cols; ++j) dst[j] += v * src[j];
            }
        }
        return out;
    }

    C trace() const {
        C t(0);
        for (int i = 0; i < rows && i < cols; ++i) t += (*this)(i, i);
        return t;
    }

    Real max_abs() const {
        Real m(0);
        for (const C& v : a) m = std::max(m, std::abs(v));
        return m;
    }

    /// det and log-det of (I - this), by partially pivoted LU. Singularity
    /// to working precision is not an error here; zeros are the object of
    /// interest downstream.
    std::pair<C, C> det_one_minus() const {
        if (rows != cols) throw std::invalid_argument("det_one_minus: square required");
        int n = rows;
        std::vector<C> m(a.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m[static_cast<size_t>(i) * n + j] = (i == j ? C(1) : C(0)) - (*this)(i, j);
        C det(1), logdet(0);
        for (int c = 0; c < n; ++c) {
            int piv = c;
            Real best = std::abs(m[static_cast<size_t>(c) * n + c]);
            for (int r = c + 1; r < n; ++r) {
                Real v = std::abs(m[static_cast<size_t>(r) * n + c]);
                if (v > best) { best = v; piv = r; }
            }
            if (piv != c) {
                for (int j = 0; j < n; ++j)
                    std::swap(m[static_cast<size_t>(piv) * n + j], m[static_cast<size_t>(c) * n + j]);
                det = -det;
                logdet += std::log(C(-1));
            }
            C p = m[static_cast<size_t>(c) * n + c];
            det *= p;
            if (p != C(0)) logdet += std::log(p);
            if (std::abs(p) == Real(0)) continue;
            for (int r = c + 1; r < n; ++r) {
                C f = m[static_cast<size_t>(r) * n + c] / p;
                if (f == C(0)) continue;
                m[static_cast<size_t>(r) * n + c] = C(0);
                for (int j = c + 1; j < n; ++j)
                    m[static_cast<size_t>(r) * n + j] -= f * m[static_cast<size_t>(c) * n + j];
            }
        }
        return {det, logdet};
    }
};

} // namespace hz
