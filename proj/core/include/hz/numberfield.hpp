#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hz {

using Rational = mpq_class;
using Integer = mpz_class;

/// The real cyclotomic field Q(lambda_q), lambda_q = 2cos(pi/q), as
/// Q[x]/(psi_q) with psi_q the minimal polynomial of lambda_q. Obtained
/// from Phi_{2q} by the palindromic substitution x = z + 1/z; since
/// Phi_{2q} is irreducible over Q, so is the substituted polynomial and
/// no factor search is needed. All elements keep a shared pointer to
/// their field.
class NumberField {
public:
    explicit NumberField(int q);

    int q() const noexcept { return q_; }
    int degree() const noexcept { return degree_; }

    /// Monic minimal polynomial coefficients, psi[0] + psi[1] x + ... + x^d.
    const std::vector<Rational>& psi() const noexcept { return psi_; }

    double lambda() const noexcept { return lambda_; }
    long double lambda_ld() const noexcept { return lambda_ld_; }

    /// Rational interval lo < lambda_q < hi isolating lambda_q from the
    /// other roots of psi. Refined in place by callers that need more bits.
    const Rational& iso_lo() const noexcept { return iso_lo_; }
    const Rational& iso_hi() const noexcept { return iso_hi_; }
    void refine_isolation(int bisections) const;

    /// Exact sign of psi at a rational point.
    int psi_sign(const Rational& x) const;

    std::string psi_string() const;

private:
    int q_ = 0;
    int degree_ = 0;
    std::vector<Rational> psi_;
    double lambda_ = 0;
    long double lambda_ld_ = 0;
    mutable Rational iso_lo_, iso_hi_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of Q(lambda_q): rational coefficient vector in the power basis
/// 1, lambda, ..., lambda^{d-1}. Immutable value semantics; the float
/// embedding is evaluated on demand.
class AlgebraicNumber {
public:
    AlgebraicNumber() = default;
    AlgebraicNumber(FieldPtr field, std::vector<Rational> coeffs);
    static AlgebraicNumber from_rational(FieldPtr field, const Rational& r);
    static AlgebraicNumber zero(FieldPtr field) { return from_rational(std::move(field), 0); }
    static AlgebraicNumber one(FieldPtr field) { return from_rational(std::move(field), 1); }
    /// The generator lambda_q itself.
    static AlgebraicNumber lambda(FieldPtr field);

    const FieldPtr& field() const noexcept { return field_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;

    AlgebraicNumber operator+(const AlgebraicNumber& o) const;
    AlgebraicNumber operator-(const AlgebraicNumber& o) const;
    AlgebraicNumber operator-() const;
    AlgebraicNumber operator*(const AlgebraicNumber& o) const;
    AlgebraicNumber operator/(const AlgebraicNumber& o) const;
    AlgebraicNumber inverse() const;

    bool operator==(const AlgebraicNumber& o) const;
    bool operator!=(const AlgebraicNumber& o) const { return !(*this == o); }

    /// Exact sign (-1, 0, +1). Uses the double embedding when it is safely
    /// away from zero, otherwise rational interval arithmetic over a
    /// refined isolating interval for lambda_q.
    int sign() const;

    double embed() const;
    long double embed_ld() const;

    std::string str() const;

private:
    FieldPtr field_;
    std::vector<Rational> coeffs_;

    void reduce();
};

/// Cyclotomic polynomial Phi_n with integer coefficients (ascending).
std::vector<Integer> cyclotomic(int n);

/// Shared field cache; make_field(q) returns the same instance per q.
FieldPtr make_field(int q);

} // namespace hz
