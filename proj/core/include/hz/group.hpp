#pragma once

#include "hz/numberfield.hpp"

#include <array>
#include <complex>
#include <functional>
#include <optional>

namespace hz {

using Complex = std::complex<double>;

enum class ElementClass { identity, elliptic, parabolic, hyperbolic };

/// Point of the projective line over Q(lambda_q): a finite algebraic value
/// or infinity.
struct ExtPoint {
    bool infinite = false;
    AlgebraicNumber value; // meaningful iff !infinite

    static ExtPoint inf() { return ExtPoint{true, {}}; }
    static ExtPoint at(AlgebraicNumber v) { return ExtPoint{false, std::move(v)}; }
    bool operator==(const ExtPoint& o) const {
        if (infinite != o.infinite) return false;
        return infinite || value == o.value;
    }
    double embed() const { return infinite ? std::numeric_limits<double>::infinity() : value.embed(); }
};

/// Projectively normalized 2x2 matrix over Q(lambda_q) with det in {+1,-1}.
/// Normalization: the first nonzero entry in order (a,b,c,d) has positive
/// embedding, so equality of elements is exact equality of entries.
class GroupElement {
public:
    GroupElement() = default;
    GroupElement(AlgebraicNumber a, AlgebraicNumber b, AlgebraicNumber c, AlgebraicNumber d);

    const AlgebraicNumber& a() const noexcept { return a_; }
    const AlgebraicNumber& b() const noexcept { return b_; }
    const AlgebraicNumber& c() const noexcept { return c_; }
    const AlgebraicNumber& d() const noexcept { return d_; }
    int det() const noexcept { return det_; }
    const FieldPtr& field() const { return a_.field(); }

    GroupElement operator*(const GroupElement& o) const;
    GroupElement inverse() const;
    GroupElement pow(int n) const; // any integer, inverse powers allowed
    bool operator==(const GroupElement& o) const;
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    bool is_identity() const;

    AlgebraicNumber trace() const { return a_ + d_; }

    /// Exact Moebius action on the projective line over the field.
    ExtPoint act(const ExtPoint& t) const;

    /// Embedded matrix for numeric work.
    std::array<double, 4> embed() const;
    std::array<long double, 4> embed_ld() const;

    ElementClass classify() const;

    /// N(g): square of the eigenvalue of larger modulus; for det -1 via
    /// N(h) = N(h^2)^(1/2). Throws on non-hyperbolic input.
    double norm() const;

    std::string str() const;

private:
    AlgebraicNumber a_, b_, c_, d_;
    int det_ = 1;
    void normalize();
};

/// Generators and basic data of the Hecke triangle group Gamma_q and its
/// reflection extension by Q: z -> 1/conj(z).
struct HeckeGroup {
    int q = 0;
    FieldPtr field;
    int m = 0;             // floor((q+1)/2)
    bool q_even = false;
    AlgebraicNumber lambda;

    GroupElement S, T, U, Q;
    std::vector<GroupElement> g; // g[k] = (U^k S)^{-1}, k = 1..q-1 (g[0] unused)

    const GroupElement& gen(int k) const { return g.at(static_cast<size_t>(k)); }
    /// Q g_k, as an element.
    GroupElement Qgen(int k) const { return Q * gen(k); }
};

/// Builds the group data for q >= 3 and checks the generator identities.
HeckeGroup make_group(int q);

/// Moebius action with complex arguments; infinity handled projectively
/// (pass {inf, 0} conventionally via the overloads below).
Complex mobius_act(const GroupElement& g, Complex t);
/// Action on the extended value: returns nullopt for the image infinity.
std::optional<Complex> mobius_act_ext(const GroupElement& g, std::optional<Complex> t);

struct BranchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// j_s(g,t) = ((ct+d)^{-2})^s, principal branch. Requires ct+d != 0 and
/// (ct+d)^2 off the cut (-inf, 0].
Complex j_factor(const GroupElement& g, Complex t, Complex s);

/// tau_s(h) f (t) = j_s(h^{-1}, t) f(h^{-1}.t); the inversion is the
/// paper's convention tau_s(g^{-1}) f = j_s(g,.) f(g..).
Complex tau_apply(const GroupElement& h, Complex s, const std::function<Complex(Complex)>& f,
                  Complex t);

} // namespace hz
