#include "hz/group.hpp"

#include <cmath>
#include <sstream>

namespace hz {

GroupElement::GroupElement(AlgebraicNumber a, AlgebraicNumber b, AlgebraicNumber c,
                           AlgebraicNumber d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    AlgebraicNumber det = a_ * d_ - b_ * c_;
    if (!det.is_rational()) throw std::invalid_argument("GroupElement: det not rational");
    if (det.coeffs()[0] == 1) det_ = 1;
    else if (det.coeffs()[0] == -1) det_ = -1;
    else throw std::invalid_argument("GroupElement: det not +-1: " + det.str());
    normalize();
}

void GroupElement::normalize() {
    const AlgebraicNumber* entries[4] = {&a_, &b_, &c_, &d_};
    for (const AlgebraicNumber* e : entries) {
        if (e->is_zero()) continue;
        if (e->sign() < 0) {
            a_ = -a_; b_ = -b_; c_ = -c_; d_ = -d_;
        }
        return;
    }
    throw std::invalid_argument("GroupElement: zero matrix");
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
    return GroupElement(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                        c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

GroupElement GroupElement::inverse() const {
    // adj(M)/det; the projective normalization absorbs the det sign.
    return GroupElement(d_, -b_, -c_, a_);
}

GroupElement GroupElement::pow(int n) const {
    GroupElement base = n >= 0 ? *this : inverse();
    int e = n >= 0 ? n : -n;
    FieldPtr F = field();
    GroupElement acc(AlgebraicNumber::one(F), AlgebraicNumber::zero(F),
                     AlgebraicNumber::zero(F), AlgebraicNumber::one(F));
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool GroupElement::operator==(const GroupElement& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

bool GroupElement::is_identity() const {
    return b_.is_zero() && c_.is_zero() && a_ == d_ && !a_.is_zero();
}

ExtPoint GroupElement::act(const ExtPoint& t) const {
    if (t.infinite) {
        if (c_.is_zero()) return ExtPoint::inf();
        return ExtPoint::at(a_ / c_);
    }
    AlgebraicNumber den = c_ * t.value + d_;
    if (den.is_zero()) return ExtPoint::inf();
    return ExtPoint::at((a_ * t.value + b_) / den);
}

std::array<double, 4> GroupElement::embed() const {
    return {a_.embed(), b_.embed(), c_.embed(), d_.embed()};
}

std::array<long double, 4> GroupElement::embed_ld() const {
    return {a_.embed_ld(), b_.embed_ld(), c_.embed_ld(), d_.embed_ld()};
}

ElementClass GroupElement::classify() const {
    AlgebraicNumber tr = trace();
    if (det_ == 1) {
        if (is_identity()) return ElementClass::identity;
        AlgebraicNumber two = AlgebraicNumber::from_rational(field(), 2);
        int cmp_pos = (tr - two).sign();
        int cmp_neg = (tr + two).sign();
        // |tr| vs 2, exactly.
        if (cmp_pos > 0 || cmp_neg < 0) return ElementClass::hyperbolic;
        if (cmp_pos == 0 || cmp_neg == 0) return ElementClass::parabolic;
        return ElementClass::elliptic;
    }
    // det -1: h^2 has trace tr^2 + 2 > 2 unless tr = 0.
    return tr.is_zero() ? ElementClass::elliptic : ElementClass::hyperbolic;
}

double GroupElement::norm() const {
    if (classify() != ElementClass::hyperbolic)
        throw std::domain_error("norm: element not hyperbolic");
    long double t = std::fabs(trace().embed_ld());
    long double r;
    if (det_ == 1) r = (t + std::sqrt(t * t - 4.0L)) / 2.0L;
    else r = (t + std::sqrt(t * t + 4.0L)) / 2.0L;
    return static_cast<double>(r * r);
}

std::string GroupElement::str() const {
    std::ostringstream os;
    os << "[[" << a_.str() << "," << b_.str() << "],[" << c_.str() << "," << d_.str() << "]]";
    return os.str();
}

HeckeGroup make_group(int q) {
    if (q < 3) throw std::domain_error("make_group: q must be >= 3");
    HeckeGroup G;
    G.q = q;
    G.field = make_field(q);
    G.m = (q + 1) / 2;
    G.q_even = (q % 2 == 0);
    G.lambda = AlgebraicNumber::lambda(G.field);

    FieldPtr F = G.field;
    AlgebraicNumber zero = AlgebraicNumber::zero(F), one = AlgebraicNumber::one(F);
    G.S = GroupElement(zero, one, -one, zero);
    G.T = GroupElement(one, G.lambda, zero, one);
    G.U = G.T * G.S;
    G.Q = GroupElement(zero, one, one, zero);

    G.g.resize(static_cast<size_t>(q));
    GroupElement Uk = G.U;
    for (int k = 1; k <= q - 1; ++k) {
        G.g[static_cast<size_t>(k)] = (Uk * G.S).inverse();
        Uk = Uk * G.U;
    }

    // Generator identities from the construction.
    GroupElement g1_expect(one, -G.lambda, zero, one);
    GroupElement gq1_expect(one, zero, -G.lambda, one);
    if (G.g[1] != g1_expect || G.g[static_cast<size_t>(q - 1)] != gq1_expect)
        throw std::logic_error("make_group: parabolic generators malformed");
    for (int k = 1; k <= q - 1; ++k)
        if (G.Q * G.g[static_cast<size_t>(k)] * G.Q != G.g[static_cast<size_t>(q - k)])
            throw std::logic_error("make_group: Q g_k Q != g_{q-k}");
    return G;
}

Complex mobius_act(const GroupElement& g, Complex t) {
    auto M = g.embed();
    Complex den = M[2] * t + M[3];
    return (M[0] * t + M[1]) / den;
}

std::optional<Complex> mobius_act_ext(const GroupElement& g, std::optional<Complex> t) {
    auto M = g.embed();
    if (!t.has_value()) {
        if (g.c().is_zero()) return std::nullopt;
        return Complex(M[0] / M[2]);
    }
    Complex den = M[2] * *t + M[3];
    if (std::abs(den) == 0.0) return std::nullopt;
    return (M[0] * *t + M[1]) / den;
}

Complex j_factor(const GroupElement& g, Complex t, Complex s) {
    auto M = g.embed();
    Complex base = M[2] * t + M[3];
    if (std::abs(base) == 0.0) {
        std::ostringstream os;
        os << "j_factor: denominator zero at t = " << t.real() << "+" << t.imag() << "i";
        throw BranchError(os.str());
    }
    Complex z = base * base;
    if (z.imag() == 0.0 && z.real() <= 0.0) {
        std::ostringstream os;
        os << "j_factor: branch cut hit at t = " << t.real() << "+" << t.imag() << "i";
        throw BranchError(os.str());
    }
    return std::exp(-s * std::log(z));
}

Complex tau_apply(const GroupElement& h, Complex s, const std::function<Complex(Complex)>& f,
                  Complex t) {
    GroupElement hi = h.inverse();
    return j_factor(hi, t, s) * f(mobius_act(hi, t));
}

} // namespace hz
