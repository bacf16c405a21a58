#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hz/numberfield.hpp"

#include <cmath>

using namespace hz;

TEST_CASE("minimal polynomials via cyclotomic substitution") {
    // q = 3: lambda = 1, psi = x - 1
    auto f3 = make_field(3);
    CHECK(f3->degree() == 1);
    CHECK(f3->psi()[0] == Rational(-1));
    CHECK(f3->psi()[1] == Rational(1));
    CHECK(AlgebraicNumber::lambda(f3).embed() == doctest::Approx(1.0).epsilon(1e-15));

    // q = 5: psi = x^2 - x - 1, lambda the golden ratio
    auto f5 = make_field(5);
    CHECK(f5->degree() == 2);
    CHECK(f5->psi()[0] == Rational(-1));
    CHECK(f5->psi()[1] == Rational(-1));
    CHECK(f5->psi()[2] == Rational(1));
    CHECK(AlgebraicNumber::lambda(f5).embed() ==
          doctest::Approx(1.6180339887498949).epsilon(1e-14));

    // float embedding accuracy across a range of q
    for (int q : {3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 30}) {
        auto f = make_field(q);
        double lam = AlgebraicNumber::lambda(f).embed();
        CHECK(std::fabs(lam - 2 * std::cos(M_PI / q)) < std::ldexp(1.0, -50));
        // psi(lambda) ~ 0
        double v = 0, xp = 1;
        for (int i = 0; i <= f->degree(); ++i) {
            v += f->psi()[i].get_d() * xp;
            xp *= lam;
        }
        CHECK(std::fabs(v) < std::ldexp(1.0, -40));
    }
}

TEST_CASE("degree equals phi(2q)/2") {
    auto phi = [](int n) {
        int r = 1;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            int pk = 1;
            while (n % p == 0) { n /= p; pk *= p; }
            r *= pk - pk / p;
        }
        if (n > 1) r *= n - 1;
        return r;
    };
    for (int q : {3, 4, 5, 6, 7, 9, 11, 14}) {
        auto f = make_field(q);
        CHECK(f->degree() == phi(2 * q) / 2);
    }
}

TEST_CASE("field arithmetic and exact signs") {
    auto f = make_field(7);
    AlgebraicNumber lam = AlgebraicNumber::lambda(f);
    AlgebraicNumber one = AlgebraicNumber::one(f);

    AlgebraicNumber inv = lam.inverse();
    CHECK(lam * inv == one);
    CHECK((lam - lam).is_zero());
    CHECK((lam * lam - lam).sign() == 1); // lambda > 1
    CHECK((one - lam).sign() == -1);
    CHECK(AlgebraicNumber::zero(f).sign() == 0);

    // a tiny but nonzero combination: lambda^3 - psi-reduced forms stay exact
    AlgebraicNumber x = lam * lam * lam - lam * lam;
    CHECK(x.sign() == 1);
    CHECK((x - x).sign() == 0);
    CHECK((x / x) == one);
}

TEST_CASE("make_group rejects q < 3") {
    CHECK_THROWS_AS(make_field(2), std::domain_error);
}
