#include "hz/numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace hz {

namespace {

// Exact division of integer polynomials, remainder must vanish.
std::vector<Integer> poly_div_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
    std::vector<Integer> quot(num.size() - den.size() + 1, Integer(0));
    for (int i = static_cast<int>(num.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
        Integer c = num[i] / den.back();
        int shift = i - static_cast<int>(den.size()) + 1;
        quot[shift] = c;
        for (size_t j = 0; j < den.size(); ++j)
            num[shift + j] -= c * den[j];
    }
    for (const auto& c : num)
        if (c != 0) throw std::logic_error("cyclotomic division not exact");
    return quot;
}

} // namespace

std::vector<Integer> cyclotomic(int n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by recursion.
    std::vector<Integer> num(n + 1, Integer(0));
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = poly_div_exact(std::move(num), cyclotomic(d));
    }
    return num;
}

NumberField::NumberField(int q) : q_(q) {
    if (q < 3) throw std::domain_error("NumberField: q must be >= 3");
    lambda_ld_ = 2.0L * std::cos(static_cast<long double>(M_PIl) / q);
    lambda_ = static_cast<double>(lambda_ld_);

    // Phi_{2q}(z) = z^d psi(z + 1/z) with d = phi(2q)/2. Using
    // z^k + z^{-k} = p_k(u), p_0 = 2, p_1 = u, p_{k+1} = u p_k - p_{k-1},
    // the coefficients of psi fall out of the palindromic half of Phi_{2q}.
    std::vector<Integer> phi = cyclotomic(2 * q);
    int d = (static_cast<int>(phi.size()) - 1) / 2;
    degree_ = d;

    std::vector<std::vector<Integer>> p(d + 1);
    p[0] = {Integer(2)};
    if (d >= 1) p[1] = {Integer(0), Integer(1)};
    for (int k = 2; k <= d; ++k) {
        p[k].assign(k + 1, Integer(0));
        for (size_t i = 0; i < p[k - 1].size(); ++i) p[k][i + 1] += p[k - 1][i];
        for (size_t i = 0; i < p[k - 2].size(); ++i) p[k][i] -= p[k - 2][i];
    }

    std::vector<Integer> psi_z(d + 1, Integer(0));
    psi_z[0] = phi[d];
    for (int k = 1; k <= d; ++k)
        for (size_t i = 0; i < p[k].size(); ++i)
            psi_z[i] += phi[d + k] * p[k][i];

    psi_.reserve(d + 1);
    for (const auto& c : psi_z) psi_.emplace_back(c);
    if (psi_.back() != 1) throw std::logic_error("psi not monic");

    // Root-proximity sanity: lambda_q must be a root to ~2^-40.
    long double v = 0, xp = 1;
    for (int i = 0; i <= d; ++i) { v += psi_[i].get_d() * static_cast<double>(xp); xp *= lambda_ld_; }
    if (std::fabs(static_cast<double>(v)) > std::ldexp(1.0, -40) * (1 << d))
        throw std::logic_error("minimal polynomial does not vanish at 2cos(pi/q)");

    // Isolating interval: a tight window around the double approximation,
    // verified to bracket a sign change (lambda_q is the largest root and
    // the nearest other root 2cos(3pi/q) is far outside this window).
    double w = 1e-6 * std::max(1.0, std::fabs(lambda_));
    iso_lo_ = Rational(lambda_ - w);
    iso_hi_ = Rational(lambda_ + w);
    iso_lo_.canonicalize();
    iso_hi_.canonicalize();
    if (psi_sign(iso_lo_) == psi_sign(iso_hi_) || psi_sign(iso_lo_) == 0 || psi_sign(iso_hi_) == 0)
        throw std::logic_error("failed to isolate lambda_q");
}

int NumberField::psi_sign(const Rational& x) const {
    Rational v = 0;
    for (int i = degree_; i >= 0; --i) v = v * x + psi_[i];
    return sgn(v);
}

void NumberField::refine_isolation(int bisections) const {
    int slo = psi_sign(iso_lo_);
    for (int it = 0; it < bisections; ++it) {
        Rational mid = (iso_lo_ + iso_hi_) / 2;
        int sm = psi_sign(mid);
        if (sm == 0) { // mid is the root itself (possible only for q = 3)
            iso_lo_ = mid;
            iso_hi_ = mid;
            return;
        }
        if (sm == slo) iso_lo_ = mid; else iso_hi_ = mid;
    }
}

std::string NumberField::psi_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = degree_; i >= 0; --i) {
        const Rational& c = psi_[i];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rational a = abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

FieldPtr make_field(int q) {
    static std::map<int, FieldPtr> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const NumberField>(q);
    cache.emplace(q, f);
    return f;
}

AlgebraicNumber::AlgebraicNumber(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    reduce();
}

void AlgebraicNumber::reduce() {
    const int d = field_->degree();
    const auto& psi = field_->psi();
    // Monic reduction of powers >= d.
    for (int i = static_cast<int>(coeffs_.size()) - 1; i >= d; --i) {
        Rational c = coeffs_[i];
        if (c == 0) continue;
        coeffs_[i] = 0;
        for (int j = 0; j < d; ++j) coeffs_[i - d + j] -= c * psi[j];
    }
    coeffs_.resize(d);
    for (auto& c : coeffs_) c.canonicalize();
}

AlgebraicNumber AlgebraicNumber::from_rational(FieldPtr field, const Rational& r) {
    std::vector<Rational> c(field->degree(), Rational(0));
    c[0] = r;
    return AlgebraicNumber(std::move(field), std::move(c));
}

AlgebraicNumber AlgebraicNumber::lambda(FieldPtr field) {
    std::vector<Rational> c(field->degree(), Rational(0));
    if (field->degree() == 1) {
        // q = 3: lambda = 1 and the field is Q.
        c[0] = -field->psi()[0];
    } else {
        c[1] = 1;
    }
    return AlgebraicNumber(std::move(field), std::move(c));
}

bool AlgebraicNumber::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool AlgebraicNumber::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

AlgebraicNumber AlgebraicNumber::operator+(const AlgebraicNumber& o) const {
    std::vector<Rational> c(coeffs_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
    return AlgebraicNumber(field_, std::move(c));
}

AlgebraicNumber AlgebraicNumber::operator-(const AlgebraicNumber& o) const {
    std::vector<Rational> c(coeffs_);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coeffs_[i];
    return AlgebraicNumber(field_, std::move(c));
}

AlgebraicNumber AlgebraicNumber::operator-() const {
    std::vector<Rational> c(coeffs_);
    for (auto& x : c) x = -x;
    return AlgebraicNumber(field_, std::move(c));
}

AlgebraicNumber AlgebraicNumber::operator*(const AlgebraicNumber& o) const {
    const int d = field_->degree();
    std::vector<Rational> c(2 * d - 1, Rational(0));
    for (int i = 0; i < d; ++i) {
        if (coeffs_[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (o.coeffs_[j] == 0) continue;
            c[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return AlgebraicNumber(field_, std::move(c));
}

AlgebraicNumber AlgebraicNumber::inverse() const {
    if (is_zero()) throw std::domain_error("AlgebraicNumber: division by zero");
    const int d = field_->degree();
    if (d == 1) {
        std::vector<Rational> c{1 / coeffs_[0]};
        return AlgebraicNumber(field_, std::move(c));
    }
    // Extended Euclid in Q[x]: u * this + v * psi = gcd = const.
    using Poly = std::vector<Rational>;
    auto deg = [](const Poly& p) {
        for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
            if (p[i] != 0) return i;
        return -1;
    };
    Poly r0 = field_->psi();
    Poly r1 = coeffs_;
    Poly s0(1, Rational(0)), s1(1, Rational(1)); // coefficients of `this`
    while (true) {
        int d1 = deg(r1);
        if (d1 <= 0) break;
        int d0 = deg(r0);
        if (d0 < d1) { std::swap(r0, r1); std::swap(s0, s1); continue; }
        Rational c = r0[d0] / r1[d1];
        int shift = d0 - d1;
        if (static_cast<int>(s0.size()) < static_cast<int>(s1.size()) + shift)
            s0.resize(s1.size() + shift, Rational(0));
        for (int i = 0; i <= d1; ++i) r0[i + shift] -= c * r1[i];
        for (size_t i = 0; i < s1.size(); ++i) s0[i + shift] -= c * s1[i];
    }
    if (deg(r1) != 0) throw std::logic_error("inverse: gcd not constant");
    Rational g = r1[0];
    std::vector<Rational> c(s1);
    for (auto& x : c) x /= g;
    return AlgebraicNumber(field_, std::move(c));
}

AlgebraicNumber AlgebraicNumber::operator/(const AlgebraicNumber& o) const {
    return *this * o.inverse();
}

bool AlgebraicNumber::operator==(const AlgebraicNumber& o) const {
    return coeffs_ == o.coeffs_;
}

double AlgebraicNumber::embed() const { return static_cast<double>(embed_ld()); }

long double AlgebraicNumber::embed_ld() const {
    long double lam = field_->lambda_ld();
    long double v = 0;
    for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i)
        v = v * lam + static_cast<long double>(coeffs_[i].get_d());
    return v;
}

int AlgebraicNumber::sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(coeffs_[0]);
    // Fast path: trust the long double embedding when it clears a scale-aware
    // threshold.
    long double v = embed_ld();
    long double scale = 0, lam = field_->lambda_ld(), xp = 1;
    for (const auto& c : coeffs_) {
        scale += std::fabs(static_cast<long double>(c.get_d())) * xp;
        xp *= std::max(1.0L, lam);
    }
    if (std::fabs(v) > 1e-12L * std::max(1.0L, scale)) return v > 0 ? 1 : -1;

    // Exact path: interval Horner over a refined isolating interval.
    for (int round = 0; round < 64; ++round) {
        field_->refine_isolation(32);
        Rational lo = field_->iso_lo(), hi = field_->iso_hi();
        Rational alo = coeffs_.back(), ahi = coeffs_.back();
        for (int i = static_cast<int>(coeffs_.size()) - 2; i >= 0; --i) {
            Rational c1 = alo * lo, c2 = alo * hi, c3 = ahi * lo, c4 = ahi * hi;
            Rational mn = std::min(std::min(c1, c2), std::min(c3, c4));
            Rational mx = std::max(std::max(c1, c2), std::max(c3, c4));
            alo = mn + coeffs_[i];
            ahi = mx + coeffs_[i];
        }
        if (alo > 0) return 1;
        if (ahi < 0) return -1;
    }
    throw std::logic_error("sign: interval refinement failed on nonzero element");
}

std::string AlgebraicNumber::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ",";
        os << coeffs_[i].get_str();
    }
    os << "]";
    return os.str();
}

} // namespace hz
