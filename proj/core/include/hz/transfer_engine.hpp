#pragma once

#include "hz/charts.hpp"
#include "hz/cmatrix.hpp"
#include "hz/group.hpp"
#include "hz/hurwitz.hpp"

#include <cmath>
#include <vector>

namespace hz {

/// Taylor-Galerkin engine on the chart disks: the basis of the chart with
/// disk D(c, r) is e_m(z) = ((z - c)/r)^m, and blocks are obtained by
/// evaluating the branch sums at points of the boundary circle and reading
/// off Fourier coefficients. Branch contraction into the disks (checked by
/// build_charts) makes determinants and traces converge superexponentially.
/// Parabolic branch sums are continued termwise through the Hurwitz zeta
/// function using the exact binomial expansion of the basis at 0.
template <class Real>
class TransferEngine {
public:
    using C = std::complex<Real>;

    TransferEngine(const HeckeGroup& G, const Charts& charts, int head_terms = 0)
        : G_(&G), q_(G.q), N_(charts.basis_size), Nr_(charts.dim_r() > 0 ? charts.basis_size : 0) {
        lam_ = static_cast<Real>(G.field->lambda_ld());
        loglam_ = std::log(lam_);
        n0_ = head_terms > 0 ? head_terms : 48;
        cy_ = static_cast<Real>(charts.dq1.center);
        ry_ = static_cast<Real>(charts.dq1.radius);
        cr_ = static_cast<Real>(charts.dr.center);
        rr_ = static_cast<Real>(charts.dr.radius);
        K_ = std::max(2 * N_ + 16, 48);
        circle_y_.resize(static_cast<size_t>(K_));
        circle_u_.resize(static_cast<size_t>(K_));
        for (int k = 0; k < K_; ++k) {
            Real th = 2 * pi() * Real(k) / Real(K_);
            C e(std::cos(th), std::sin(th));
            circle_y_[static_cast<size_t>(k)] = cy_ + ry_ * e;
            circle_u_[static_cast<size_t>(k)] = cr_ + rr_ * e;
        }
    }

    int dim_y() const { return N_; }
    int dim_r() const { return Nr_; }
    Real lambda() const { return lam_; }

    C y_coord(C y) const { return (y - cy_) / ry_; }
    C u_coord(C u) const { return (u - cr_) / rr_; }

    /// Basis evaluation on the y chart at a point (e.g. for eigenfunction
    /// interpolants): f(y) = sum_m v_m ((y-c)/r)^m.
    C eval_y(const C* coeffs, int n, C y) const {
        C u = y_coord(y), um(1), acc(0);
        for (int m = 0; m < n; ++m) { acc += coeffs[m] * um; um *= u; }
        return acc;
    }
    C eval_u(const C* coeffs, int n, C u) const {
        C w = u_coord(u), wm(1), acc(0);
        for (int m = 0; m < n; ++m) { acc += coeffs[m] * wm; wm *= w; }
        return acc;
    }

    /// Core parabolic sum sum_{n>=1} (t+n lam)^{-2s} e_m(1/(t+n lam)) for the
    /// y-chart basis, rows indexed by the target points t (complex allowed,
    /// Re t > -lam): direct head plus termwise Hurwitz tail via the exact
    /// binomial expansion of e_m at 0.
    CMat<Real> core_rows(const std::vector<C>& t, C s, int n_head = 0, bool continued = true) const {
        const C two_s = Real(2) * s;
        if (continued) check_poles(two_s);
        int nh = n_head > 0 ? n_head : n0_;
        int nt = static_cast<int>(t.size());
        CMat<Real> B(nt, N_);
        std::vector<C> W(static_cast<size_t>(N_));
        for (int i = 0; i < nt; ++i) {
            C ti = t[static_cast<size_t>(i)];
            C* row = &B.a[static_cast<size_t>(i) * N_];
            for (int n = 1; n <= nh; ++n) {
                C base = ti + Real(n) * lam_;
                C pr = std::exp(-two_s * std::log(base));
                C u = y_coord(Real(1) / base), um(1);
                for (int m = 0; m < N_; ++m) { row[m] += pr * um; um *= u; }
            }
            if (continued) {
                // W[j] = lam^{-(2s+j)} zeta_H(2s+j, t/lam + nh + 1)
                C a = ti / lam_ + Real(nh + 1);
                for (int j = 0; j < N_; ++j)
                    W[static_cast<size_t>(j)] =
                        std::exp(-(two_s + Real(j)) * loglam_) * hurwitz_zeta<Real>(two_s + Real(j), a);
            } else {
                // elementary Euler-Maclaurin tail, no Hurwitz zeta involved
                if (!(two_s.real() > Real(1.05)))
                    throw std::domain_error("core_rows: direct mode needs Re(2s) > 1.05");
                for (int j = 0; j < N_; ++j)
                    W[static_cast<size_t>(j)] = em_tail(two_s + Real(j), ti, nh + 1);
            }
            // e_m(y) = sum_j binom(m,j) (-c)^{m-j} r^{-m} y^j
            for (int m = 0; m < N_; ++m) {
                C acc(0);
                Real b = std::pow(-cy_, Real(m)) / std::pow(ry_, Real(m)); // j = 0 coefficient
                for (int j = 0; j <= m; ++j) {
                    acc += b * W[static_cast<size_t>(j)];
                    if (j < m) b *= -Real(m - j) / (Real(j + 1) * cy_);
                }
                row[m] += acc;
            }
        }
        return B;
    }

    /// sum_{n >= n1} (t + n lam)^{-z} by elementary Euler-Maclaurin.
    C em_tail(C z, C t, int n1) const {
        C A = t + Real(n1) * lam_;
        C Amz = std::exp(-z * std::log(A));
        C sum = Amz * A / (lam_ * (z - C(1)));
        sum += Amz / Real(2);
        sum += z * lam_ * Amz / A / Real(12);
        sum -= z * (z + C(1)) * (z + C(2)) * lam_ * lam_ * lam_ * Amz / (A * A * A) / Real(720);
        return sum;
    }

    struct FiniteTerm {
        std::array<Real, 4> inv; // h^{-1} embedded
        C weight;
    };

    FiniteTerm term(const GroupElement& h, C weight) const {
        auto e = h.inverse().embed_ld();
        return {{static_cast<Real>(e[0]), static_cast<Real>(e[1]), static_cast<Real>(e[2]),
                 static_cast<Real>(e[3])},
                weight};
    }

    /// Finite-sum rows at complex x-coordinate targets; source chart Dr.
    CMat<Real> finite_rows_x(const std::vector<C>& x, C s,
                             const std::vector<FiniteTerm>& terms) const {
        const C two_s = Real(2) * s;
        int nt = static_cast<int>(x.size());
        CMat<Real> B(nt, Nr_);
        for (int i = 0; i < nt; ++i) {
            C* row = &B.a[static_cast<size_t>(i) * Nr_];
            for (const auto& tm : terms) {
                C den = tm.inv[2] * x[static_cast<size_t>(i)] + tm.inv[3];
                if (!(den.real() > Real(0)))
                    throw BranchError("finite block: branch denominator left the half plane");
                C img = (tm.inv[0] * x[static_cast<size_t>(i)] + tm.inv[1]) / den;
                C j = std::exp(-two_s * std::log(den));
                if (!(img.real() > Real(0)))
                    throw BranchError("finite block: image left the half plane");
                C u = u_coord(std::log(img) / loglam_), um(1);
                for (int m = 0; m < Nr_; ++m) { row[m] += tm.weight * j * um; um *= u; }
            }
        }
        return B;
    }

    /// Finite-sum rows for the D1 target in the w = 1/x chart; the pulled
    /// back weight w^{-2s} j_s collapses into ((gamma + delta w)^{-2})^s.
    CMat<Real> finite_rows_w(const std::vector<C>& w, C s,
                             const std::vector<FiniteTerm>& terms) const {
        const C two_s = Real(2) * s;
        int nt = static_cast<int>(w.size());
        CMat<Real> B(nt, Nr_);
        for (int i = 0; i < nt; ++i) {
            C* row = &B.a[static_cast<size_t>(i) * Nr_];
            for (const auto& tm : terms) {
                C den = tm.inv[2] + tm.inv[3] * w[static_cast<size_t>(i)];
                if (!(den.real() > Real(0)))
                    throw BranchError("finite block (w-form): denominator left the half plane");
                C img = (tm.inv[0] + tm.inv[1] * w[static_cast<size_t>(i)]) / den;
                C j = std::exp(-two_s * std::log(den));
                if (!(img.real() > Real(0)))
                    throw BranchError("finite block (w-form): image left the half plane");
                C u = u_coord(std::log(img) / loglam_), um(1);
                for (int m = 0; m < Nr_; ++m) { row[m] += tm.weight * j * um; um *= u; }
            }
        }
        return B;
    }

    /// Project circle-sampled rows onto the first n basis coefficients.
    CMat<Real> project(const CMat<Real>& rows, int n) const {
        CMat<Real> M(n, rows.cols);
        for (int mp = 0; mp < n; ++mp) {
            for (int j = 0; j < rows.cols; ++j) {
                C acc(0);
                for (int k = 0; k < K_; ++k) {
                    Real th = 2 * pi() * Real(k) * Real(mp) / Real(K_);
                    acc += rows(k, j) * C(std::cos(th), -std::sin(th));
                }
                M(mp, j) = acc / Real(K_);
            }
        }
        return M;
    }

    struct Assembled {
        std::vector<int> dims;
        CMat<Real> M;
    };

    /// Symmetrized operators on B(D_{q-1}) x B(D_r); parity = +-1. gm_half
    /// controls the even-q 1/2 weights (false is a validation control that
    /// must break the determinant factorization).
    Assembled build_pm(C s, int parity, bool gm_half = true) const {
        Assembled out;
        CMat<Real> A11 = project(core_rows(circle_y_, s), N_);
        if (parity < 0)
            for (auto& v : A11.a) v = -v;
        if (Nr_ == 0) {
            out.dims = {N_};
            out.M = std::move(A11);
            return out;
        }
        std::vector<FiniteTerm> terms = pm_finite_terms(parity, gm_half);
        CMat<Real> A12 = project(finite_rows_x(circle_y_, s, terms), N_);

        std::vector<C> xr = dr_circle_x();
        CMat<Real> A21 = project(plain_plus_twist_rows(xr, s, parity), Nr_);
        CMat<Real> A22 = project(finite_rows_x(xr, s, terms), Nr_);

        out.dims = {N_, Nr_};
        out.M = CMat<Real>(N_ + Nr_, N_ + Nr_);
        paste(out.M, A11, 0, 0);
        paste(out.M, A12, 0, N_);
        paste(out.M, A21, N_, 0);
        paste(out.M, A22, N_, N_);
        return out;
    }

    /// Full 3-chart operator; the D1 component is stored through its
    /// tau_s(Q)-pullback, turning both parabolic families into the same core.
    Assembled build_full(C s) const {
        Assembled out;
        CMat<Real> core_y = project(core_rows(circle_y_, s), N_);
        if (Nr_ == 0) {
            out.dims = {N_, 0, N_};
            out.M = CMat<Real>(2 * N_, 2 * N_);
            paste(out.M, core_y, 0, N_);
            paste(out.M, core_y, N_, 0);
            return out;
        }
        std::vector<FiniteTerm> terms;
        for (int k = 2; k <= q_ - 2; ++k) terms.push_back(term(G_->gen(k), C(1)));
        std::vector<C> xr = dr_circle_x();

        CMat<Real> F12 = project(finite_rows_x(circle_y_, s, terms), N_);
        CMat<Real> F22 = project(finite_rows_x(xr, s, terms), Nr_);
        CMat<Real> F32 = project(finite_rows_w(circle_y_, s, terms), N_);
        CMat<Real> C23 = project(core_rows(xr, s), Nr_);
        CMat<Real> C21 = project(plain_rows(xr, s), Nr_);

        int n = 2 * N_ + Nr_;
        out.dims = {N_, Nr_, N_};
        out.M = CMat<Real>(n, n);
        paste(out.M, F12, 0, N_);
        paste(out.M, core_y, 0, N_ + Nr_);
        paste(out.M, C21, N_, 0);
        paste(out.M, F22, N_, N_);
        paste(out.M, C23, N_, N_ + Nr_);
        paste(out.M, core_y, N_ + Nr_, 0);
        paste(out.M, F32, N_ + Nr_, N_);
        return out;
    }

    /// T_s(Q) on the stored components: exact swap of the D_{q-1}/D1 blocks
    /// and the projected reversal-with-j-factor on D_r.
    CMat<Real> symmetry_operator(C s) const {
        const C two_s = Real(2) * s;
        int n = 2 * N_ + Nr_;
        CMat<Real> T(n, n);
        for (int i = 0; i < N_; ++i) {
            T(i, N_ + Nr_ + i) = C(1);
            T(N_ + Nr_ + i, i) = C(1);
        }
        if (Nr_ > 0) {
            // rows: f(u) -> lam^{-2 s u} f(-u), sampled on the Dr circle
            CMat<Real> rows(K_, Nr_);
            for (int k = 0; k < K_; ++k) {
                C u = circle_u_[static_cast<size_t>(k)];
                C j = std::exp(-two_s * u * loglam_); // (lam^u)^{-2s}
                C um(1), mu = u_coord(-u);
                for (int m = 0; m < Nr_; ++m) { rows(k, m) = j * um; um *= mu; }
            }
            CMat<Real> T22 = project(rows, Nr_);
            paste(T, T22, N_, N_);
        }
        return T;
    }

    const std::vector<C>& circle_y() const { return circle_y_; }
    const std::vector<C>& circle_u() const { return circle_u_; }
    std::vector<C> dr_circle_x() const {
        std::vector<C> x(circle_u_.size());
        for (size_t i = 0; i < circle_u_.size(); ++i) x[i] = std::exp(circle_u_[i] * loglam_);
        return x;
    }

    /// Plain parabolic rows at Dr targets: x^{-2s} core(1/x).
    CMat<Real> plain_rows(const std::vector<C>& x, C s) const {
        const C two_s = Real(2) * s;
        std::vector<C> inv_x(x.size());
        for (size_t i = 0; i < x.size(); ++i) inv_x[i] = Real(1) / x[i];
        CMat<Real> B = core_rows(inv_x, s);
        for (int i = 0; i < B.rows; ++i) {
            C f = std::exp(-two_s * std::log(x[static_cast<size_t>(i)]));
            for (int m = 0; m < B.cols; ++m) B(i, m) *= f;
        }
        return B;
    }

private:
    const HeckeGroup* G_;
    int q_, N_, Nr_;
    Real lam_, loglam_;
    Real cy_ = 0, ry_ = 0, cr_ = 0, rr_ = 0;
    int n0_, K_ = 0;
    std::vector<C> circle_y_, circle_u_;

    static Real pi() { return Real(3.14159265358979323846264338327950288L); }

    void check_poles(C two_s) const {
        for (int m = 0; m < N_; ++m)
            if (std::abs(two_s + Real(m) - C(1)) < Real(1e-8))
                throw PoleError("parabolic block: s in the pole set (1-k)/2");
    }

    CMat<Real> plain_plus_twist_rows(const std::vector<C>& xr, C s, int parity) const {
        CMat<Real> P = plain_rows(xr, s);
        CMat<Real> Qw = core_rows(xr, s);
        for (size_t i = 0; i < P.a.size(); ++i)
            P.a[i] += (parity > 0 ? Qw.a[i] : -Qw.a[i]);
        return P;
    }

    std::vector<FiniteTerm> pm_finite_terms(int parity, bool gm_half) const {
        std::vector<FiniteTerm> terms;
        int k_lo = G_->q_even ? G_->m + 1 : G_->m;
        for (int k = k_lo; k <= q_ - 2; ++k) {
            terms.push_back(term(G_->gen(k), C(1)));
            terms.push_back(term(G_->Qgen(k), C(Real(parity))));
        }
        if (G_->q_even) {
            Real wgt = gm_half ? Real(0.5) : Real(1);
            terms.push_back(term(G_->gen(G_->m), C(wgt)));
            terms.push_back(term(G_->Qgen(G_->m), C(Real(parity) * wgt)));
        }
        return terms;
    }

    static void paste(CMat<Real>& M, const CMat<Real>& B, int r0, int c0) {
        for (int i = 0; i < B.rows; ++i)
            for (int j = 0; j < B.cols; ++j) M(r0 + i, c0 + j) = B(i, j);
    }
};

} // namespace hz
