#include "hz/transfer.hpp"

#include "hz/transfer_engine.hpp"

#include <cmath>
#include <sstream>

namespace hz {

namespace {

template <class Real>
OperatorMatrix build_with(const HeckeGroup& G, Complex s, Parity parity, const Charts& charts,
                          const BuildOptions& opts) {
    TransferEngine<Real> eng(G, charts, opts.head_terms);
    std::complex<Real> sr(static_cast<Real>(s.real()), static_cast<Real>(s.imag()));
    typename TransferEngine<Real>::Assembled out;
    if (parity == Parity::full) out = eng.build_full(sr);
    else out = eng.build_pm(sr, parity == Parity::plus ? 1 : -1, opts.gm_half_weight);

    OperatorMatrix M;
    M.q = G.q;
    M.s = s;
    M.parity = parity;
    M.dims = out.dims;
    M.size = out.M.rows;
    M.a.resize(out.M.a.size());
    for (size_t i = 0; i < M.a.size(); ++i)
        M.a[i] = Complex(static_cast<double>(out.M.a[i].real()),
                         static_cast<double>(out.M.a[i].imag()));
    if constexpr (std::is_same_v<Real, long double>) M.a_ld = std::move(out.M.a);
    return M;
}

} // namespace

bool OperatorMatrix::finite() const {
    for (const Complex& v : a)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

OperatorMatrix build_fast_operator(const HeckeGroup& G, Complex s, Parity parity,
                                   const Charts& charts, const BuildOptions& opts) {
    if (G.q != charts.q) throw std::invalid_argument("build_fast_operator: chart/group mismatch");
    OperatorMatrix M = opts.precision == Precision::f80
                           ? build_with<long double>(G, s, parity, charts, opts)
                           : build_with<double>(G, s, parity, charts, opts);
    if (!M.finite()) throw std::logic_error("build_fast_operator: non-finite entries");
    return M;
}

FredholmDet fredholm_det(const OperatorMatrix& M) {
    if (!M.a_ld.empty()) {
        CMat<long double> A(M.size, M.size);
        A.a = M.a_ld;
        auto [d, ld] = A.det_one_minus();
        return {Complex(static_cast<double>(d.real()), static_cast<double>(d.imag())),
                Complex(static_cast<double>(ld.real()), static_cast<double>(ld.imag()))};
    }
    CMat<double> A(M.size, M.size);
    A.a = M.a;
    auto [d, ld] = A.det_one_minus();
    return {d, ld};
}

Complex matrix_trace_power(const OperatorMatrix& M, int n) {
    if (n < 1) throw std::invalid_argument("matrix_trace_power: n >= 1");
    CMat<double> A(M.size, M.size);
    A.a = M.a;
    CMat<double> P = A;
    for (int i = 1; i < n; ++i) P = P.mul(A);
    return P.trace();
}

std::vector<std::vector<Complex>> parabolic_block(const HeckeGroup& G, Complex s,
                                                  ParabolicVariant variant, SumMode mode,
                                                  const Charts& charts,
                                                  const std::vector<double>& targets,
                                                  double weight) {
    TransferEngine<double> eng(G, charts);
    // Both variants reduce to the core sum: qtwisted(t) = core(t),
    // plain(t) = t^{-2s} core(1/t).
    std::vector<Complex> t;
    t.reserve(targets.size());
    for (double v : targets) {
        if (variant == ParabolicVariant::plain) {
            if (!(v > 0)) throw BranchError("parabolic_block: plain variant needs targets > 0");
            t.emplace_back(1.0 / v, 0.0);
        } else {
            t.emplace_back(v, 0.0);
        }
    }
    CMat<double> B = mode == SumMode::continued ? eng.core_rows(t, s)
                                                : eng.core_rows(t, s, 20000, false);
    std::vector<std::vector<Complex>> out(targets.size(),
                                          std::vector<Complex>(static_cast<size_t>(B.cols)));
    for (size_t i = 0; i < targets.size(); ++i) {
        Complex pre = weight;
        if (variant == ParabolicVariant::plain)
            pre *= std::exp(-2.0 * s * std::log(Complex(targets[i])));
        for (int m = 0; m < B.cols; ++m)
            out[i][static_cast<size_t>(m)] = pre * B(static_cast<int>(i), m);
    }
    return out;
}

Complex apply_slow_operator(const HeckeGroup& G, Complex s, Parity parity,
                            const std::function<Complex(Complex)>& f, Complex x) {
    auto tau = [&](const GroupElement& h) { return tau_apply(h, s, f, x); };
    Complex acc(0);
    if (parity == Parity::full) {
        for (int k = 1; k <= G.q - 1; ++k) acc += tau(G.gen(k));
        return acc;
    }
    double sign = parity == Parity::plus ? 1.0 : -1.0;
    if (!G.q_even) {
        for (int k = G.m; k <= G.q - 1; ++k)
            acc += tau(G.gen(k)) + sign * tau(G.Qgen(k));
    } else {
        for (int k = G.m + 1; k <= G.q - 1; ++k)
            acc += tau(G.gen(k)) + sign * tau(G.Qgen(k));
        acc += 0.5 * tau(G.gen(G.m)) + sign * 0.5 * tau(G.Qgen(G.m));
    }
    return acc;
}

std::vector<Complex> apply_slow_operator(const HeckeGroup& G, Complex s, Parity parity,
                                         const std::function<Complex(Complex)>& f,
                                         const std::vector<double>& points) {
    std::vector<Complex> out;
    out.reserve(points.size());
    std::vector<double> bad;
    for (double x : points) {
        try {
            out.push_back(apply_slow_operator(G, s, parity, f, Complex(x)));
        } catch (const BranchError&) {
            bad.push_back(x);
            out.push_back(Complex(0));
        }
    }
    if (!bad.empty()) {
        std::ostringstream os;
        os << "apply_slow_operator: pole proximity at points:";
        for (double x : bad) os << " " << x;
        throw BranchError(os.str());
    }
    return out;
}

SymmetryReport symmetry_decomposition_check(const HeckeGroup& G, Complex s, const Charts& charts,
                                            const BuildOptions& opts) {
    SymmetryReport rep;
    OperatorMatrix L = build_fast_operator(G, s, Parity::full, charts, opts);
    TransferEngine<double> eng(G, charts, opts.head_terms);
    CMat<double> T = eng.symmetry_operator(s);
    CMat<double> A(L.size, L.size);
    A.a = L.a;
    CMat<double> TL = T.mul(A), LT = A.mul(T);
    // Commutation is probed on analytic coefficient vectors; raw high-order
    // basis columns see the truncation tail of the reversal operator, which
    // the smoothing of L removes on actual functions.
    int n = L.size;
    std::vector<std::vector<Complex>> probes;
    for (int j = 0; j < 3; ++j) {
        std::vector<Complex> v(static_cast<size_t>(n), Complex(0));
        for (size_t ofs = 0; ofs < static_cast<size_t>(n);) {
            for (int d : L.dims) {
                if (d > j) v[ofs + static_cast<size_t>(j)] = Complex(1);
                ofs += static_cast<size_t>(d);
            }
        }
        probes.push_back(std::move(v));
    }
    {
        std::vector<Complex> v(static_cast<size_t>(n));
        size_t ofs = 0;
        for (int d : L.dims) {
            for (int m = 0; m < d; ++m) v[ofs + static_cast<size_t>(m)] = std::pow(0.5, m);
            ofs += static_cast<size_t>(d);
        }
        probes.push_back(std::move(v));
    }
    double worst = 0;
    for (const auto& v : probes) {
        double diff = 0, scale = 1e-300;
        for (int i = 0; i < n; ++i) {
            Complex a(0), b(0);
            for (int j = 0; j < n; ++j) {
                a += TL(i, j) * v[static_cast<size_t>(j)];
                b += LT(i, j) * v[static_cast<size_t>(j)];
            }
            diff = std::max(diff, std::abs(a - b));
            scale = std::max({scale, std::abs(a), std::abs(b)});
        }
        worst = std::max(worst, diff / std::max(scale, A.max_abs()));
    }
    rep.commutator_residual = worst;
    rep.commutes = rep.commutator_residual <= 1e-9;

    rep.det_full = fredholm_det(L).value;
    OperatorMatrix Lp = build_fast_operator(G, s, Parity::plus, charts, opts);
    OperatorMatrix Lm = build_fast_operator(G, s, Parity::minus, charts, opts);
    rep.det_plus = fredholm_det(Lp).value;
    rep.det_minus = fredholm_det(Lm).value;
    Complex prod = rep.det_plus * rep.det_minus;
    rep.factorization_residual =
        std::abs(rep.det_full - prod) / std::max(std::abs(rep.det_full), 1e-300);
    rep.factorizes = rep.factorization_residual <= 1e-8;
    return rep;
}

std::function<Complex(Complex)> eigenvector_interpolant(const HeckeGroup& G, const Charts& charts,
                                                        const std::vector<Complex>& vec) {
    auto eng = std::make_shared<TransferEngine<double>>(G, charts);
    int N = eng->dim_y(), Nr = eng->dim_r();
    double lam = G.field->lambda();
    auto v = std::make_shared<std::vector<Complex>>(vec);
    return [eng, v, N, Nr, lam](Complex x) -> Complex {
        double xr = x.real();
        if (xr <= 1.0 / lam + 1e-14)
            return eng->eval_y(v->data(), N, Complex(std::min(xr, 1.0 / lam)));
        if (Nr == 0) throw std::domain_error("eigenvector_interpolant: point beyond chart (q=3)");
        double u = std::log(xr) / std::log(lam);
        return eng->eval_u(v->data() + N, Nr, Complex(u));
    };
}

std::vector<Complex> unit_eigenvector(const OperatorMatrix& M) {
    // Inverse iteration on (I - M): a few passes from a fixed start vector.
    int n = M.size;
    CMat<double> A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = (i == j ? 1.0 : 0.0) - M.at(i, j);
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        double best = std::abs(A(c, c));
        for (int r = c + 1; r < n; ++r)
            if (std::abs(A(r, c)) > best) { best = std::abs(A(r, c)); piv = r; }
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(c, j));
            std::swap(perm[static_cast<size_t>(piv)], perm[static_cast<size_t>(c)]);
        }
        Complex p = A(c, c);
        if (std::abs(p) < 1e-300) p = 1e-300;
        for (int r = c + 1; r < n; ++r) {
            Complex f = A(r, c) / p;
            A(r, c) = f;
            for (int j = c + 1; j < n; ++j) A(r, j) -= f * A(c, j);
        }
    }
    std::vector<Complex> x(static_cast<size_t>(n), Complex(1.0));
    for (int pass = 0; pass < 3; ++pass) {
        std::vector<Complex> b(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            b[static_cast<size_t>(i)] = x[static_cast<size_t>(perm[static_cast<size_t>(i)])];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) b[static_cast<size_t>(i)] -= A(i, j) * b[static_cast<size_t>(j)];
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) b[static_cast<size_t>(i)] -= A(i, j) * b[static_cast<size_t>(j)];
            Complex p = A(i, i);
            if (std::abs(p) < 1e-300) p = 1e-300;
            b[static_cast<size_t>(i)] /= p;
        }
        double norm = 0;
        for (const Complex& v2 : b) norm += std::norm(v2);
        norm = std::sqrt(norm);
        for (Complex& v2 : b) v2 /= norm;
        x = std::move(b);
    }
    return x;
}

} // namespace hz
