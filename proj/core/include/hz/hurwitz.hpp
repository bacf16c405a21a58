#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hz {

struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Hurwitz zeta by Euler-Maclaurin: shift a until it clears the asymptotic
/// threshold, then tail integral, half term and Bernoulli corrections.
/// Accepts complex a with Re a > 0. Good to ~1e-13 (double) for |z| <= 50,
/// Re a >= 1/4; accuracy improves with Real = long double.
template <class Real>
std::complex<Real> hurwitz_zeta(std::complex<Real> z, std::complex<Real> a) {
    using C = std::complex<Real>;
    if (!(a.real() > Real(0))) throw std::domain_error("hurwitz_zeta: Re a must be positive");
    if (std::abs(z - C(1)) < Real(1e-10)) throw PoleError("hurwitz_zeta: pole at s = 1");

    static const Real bern_over_fact[] = {
        // B_{2r}/(2r)! for r = 1..15
        Real(8.3333333333333333333e-02L),  Real(-1.3888888888888888889e-03L),
        Real(3.3068783068783068783e-05L),  Real(-8.2671957671957671958e-07L),
        Real(2.0876756987868098979e-08L),  Real(-5.2841901386874931848e-10L),
        Real(1.3382536530684678833e-11L),  Real(-3.3896802963225828668e-13L),
        Real(8.5860620562778445641e-15L),  Real(-2.1748686985580618730e-16L),
        Real(5.5090028283602295152e-18L),  Real(-1.3954464685812523340e-19L),
        Real(3.5347070396294674718e-21L),  Real(-8.9535174270375468504e-23L),
        Real(2.2679524523376830603e-24L)};

    const Real thresh = std::max(Real(18), std::max(std::abs(z.imag()) * Real(0.5) + Real(8),
                                                    std::abs(z) * Real(0.55)));
    C sum(0);
    C A = a;
    while (A.real() < thresh) {
        sum += std::exp(-z * std::log(A));
        A += 1;
    }
    const C logA = std::log(A);
    const C Amz = std::exp(-z * logA); // A^{-z}
    sum += Amz * A / (z - C(1));       // A^{1-z}/(z-1)
    sum += Amz / Real(2);

    // Bernoulli corrections: B_{2r}/(2r)! * (z)_{2r-1} * A^{-z-2r+1}
    C poch = z;       // (z)_{2r-1} at r = 1
    C Apow = Amz / A; // A^{-z-2r+1} at r = 1
    for (int r = 1; r <= 15; ++r) {
        sum += bern_over_fact[r - 1] * poch * Apow;
        poch *= (z + C(Real(2 * r - 1))) * (z + C(Real(2 * r)));
        Apow /= A * A;
    }
    return sum;
}

template <class Real>
std::complex<Real> hurwitz_zeta(std::complex<Real> z, Real a) {
    return hurwitz_zeta<Real>(z, std::complex<Real>(a));
}

} // namespace hz
