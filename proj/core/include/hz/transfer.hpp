#pragma once

#include "hz/charts.hpp"
#include "hz/group.hpp"

#include <complex>
#include <vector>

namespace hz {

enum class Parity { full, plus, minus };
enum class Precision { f64, f80 };
enum class ParabolicVariant { plain, qtwisted };
enum class SumMode { continued, direct };

struct BuildOptions {
    Precision precision = Precision::f64;
    int head_terms = 0; // 0: auto (max(64, 2N))
    bool gm_half_weight = true; // validation control for the even-q weights
};

/// Discretized operator: blocks over (D_{q-1}, D_r, D_1-pullback) for the
/// full operator, (D_{q-1}, D_r) for the symmetrized ones. Row-major dense
/// complex entries; an extended-precision shadow copy is kept when built
/// with Precision::f80 and used by the determinant path.
struct OperatorMatrix {
    int q = 0;
    Complex s;
    Parity parity = Parity::full;
    std::vector<int> dims;
    int size = 0;
    std::vector<Complex> a;
    std::vector<std::complex<long double>> a_ld;

    Complex at(int i, int j) const { return a[static_cast<size_t>(i) * size + j]; }
    bool finite() const;
};

OperatorMatrix build_fast_operator(const HeckeGroup& G, Complex s, Parity parity,
                                   const Charts& charts, const BuildOptions& opts = {});

struct FredholmDet {
    Complex value;     // det(1 - L)
    Complex log_value; // sum of pivot logs; exp(log_value) == value
};

FredholmDet fredholm_det(const OperatorMatrix& M);
Complex matrix_trace_power(const OperatorMatrix& M, int n);

/// Value-basis parabolic branch-sum block at the given target points,
/// acting on y-chart (D_{q-1}) node values. `direct` is the summation
/// oracle (needs Re s >= 0.6), `continued` the Hurwitz-zeta production
/// path valid on the critical line.
std::vector<std::vector<Complex>> parabolic_block(const HeckeGroup& G, Complex s,
                                                  ParabolicVariant variant, SumMode mode,
                                                  const Charts& charts,
                                                  const std::vector<double>& targets,
                                                  double weight = 1.0);

/// Pointwise slow transfer operators; parity full is L_{F,s}, plus/minus
/// the symmetrized billiard forms (with the even-q 1/2 weights).
Complex apply_slow_operator(const HeckeGroup& G, Complex s, Parity parity,
                            const std::function<Complex(Complex)>& f, Complex x);
std::vector<Complex> apply_slow_operator(const HeckeGroup& G, Complex s, Parity parity,
                                         const std::function<Complex(Complex)>& f,
                                         const std::vector<double>& points);

struct SymmetryReport {
    bool commutes = false;
    bool factorizes = false;
    double commutator_residual = 0; // ||TL - LT||_max / ||L||_max
    double factorization_residual = 0;
    Complex det_full, det_plus, det_minus;
};

/// Builds L_{G,s} and T_s(Q) on the shared Q-compatible nodes, checks the
/// commutation and det(1-L) = det(1-L+) det(1-L-).
SymmetryReport symmetry_decomposition_check(const HeckeGroup& G, Complex s, const Charts& charts,
                                            const BuildOptions& opts = {});

/// Interpolated evaluation of an eigenvector of a symmetrized operator as
/// a function on (0, max): component 1 on (0, 1/lambda], component 2 on
/// [1/lambda, lambda]. Used for slow-operator residual tests.
std::function<Complex(Complex)> eigenvector_interpolant(const HeckeGroup& G, const Charts& charts,
                                                        const std::vector<Complex>& vec);

/// Smallest-singular-vector of (I - M), for eigenfunction extraction.
std::vector<Complex> unit_eigenvector(const OperatorMatrix& M);

} // namespace hz
