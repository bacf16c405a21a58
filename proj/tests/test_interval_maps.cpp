#include <doctest.h>

#include "hz/interval_maps.hpp"
#include "hz/transfer.hpp"

#include <random>

using namespace hz;

TEST_CASE("branch tables: exact endpoints and tiling") {
    HeckeGroup G3 = make_group(3);
    BranchSystem F3 = branch_table(G3, SystemName::F);
    REQUIRE(F3.branches.size() == 2);
    // domains (0,1) and (1,infinity): check exact endpoints
    AlgebraicNumber one = AlgebraicNumber::one(G3.field);
    CHECK(F3.branches[0].lo == ExtPoint::at(one));
    CHECK(F3.branches[0].hi == ExtPoint::inf());
    CHECK(F3.branches[1].lo == ExtPoint::at(AlgebraicNumber::zero(G3.field)));
    CHECK(F3.branches[1].hi == ExtPoint::at(one));

    // image endpoints equal the Moebius images of the domain endpoints,
    // exactly: every FQ_odd branch maps onto (0,1)
    for (int q : {5, 7}) {
        HeckeGroup G = make_group(q);
        BranchSystem sys = branch_table(G, SystemName::FQ_odd);
        ExtPoint zero = ExtPoint::at(AlgebraicNumber::zero(G.field));
        ExtPoint one = ExtPoint::at(AlgebraicNumber::one(G.field));
        for (const Branch& b : sys.branches) {
            if (b.is_point) continue;
            ExtPoint ilo = b.map_element.act(b.lo);
            ExtPoint ihi = b.map_element.act(b.hi);
            bool onto01 = (ilo == zero && ihi == one) || (ilo == one && ihi == zero);
            CHECK(onto01);
        }
    }
    // even-q relation: interval rows map onto subintervals with exact
    // algebraic endpoints; spot check that images are consistent
    {
        HeckeGroup G = make_group(4);
        BranchSystem sys = branch_table(G, SystemName::FQ_even);
        for (const Branch& b : sys.branches) {
            if (b.is_point) continue;
            double a = b.map_element.act(b.lo).embed();
            double c = b.map_element.act(b.hi).embed();
            CHECK(a != c);
        }
    }

    // parity mismatch rejected
    CHECK_THROWS_AS(branch_table(G3, SystemName::FQ_even), std::invalid_argument);
    HeckeGroup G4 = make_group(4);
    CHECK_THROWS_AS(branch_table(G4, SystemName::GQ_odd), std::invalid_argument);
}

TEST_CASE("parabolic families instantiate exactly") {
    HeckeGroup G = make_group(5);
    BranchSystem sys = branch_table(G, SystemName::G);
    REQUIRE(sys.families.size() == 2);
    double lam = G.field->lambda();
    // g_1 family: domain (n lam, (n+1) lam)
    for (int n = 1; n <= 4; ++n) {
        Branch b = instantiate(G, sys.families[0], n);
        CHECK(b.lo.embed() == doctest::Approx(n * lam).epsilon(1e-14));
        CHECK(b.hi.embed() == doctest::Approx((n + 1) * lam).epsilon(1e-14));
        CHECK(b.map_element == G.gen(1).pow(n));
    }
    // g_{q-1} family: domain (1/((n+1)lam), 1/(n lam))
    for (int n = 1; n <= 4; ++n) {
        Branch b = instantiate(G, sys.families[1], n);
        CHECK(b.lo.embed() == doctest::Approx(1.0 / ((n + 1) * lam)).epsilon(1e-13));
        CHECK(b.hi.embed() == doctest::Approx(1.0 / (n * lam)).epsilon(1e-13));
    }
}

TEST_CASE("step semantics") {
    HeckeGroup G3 = make_group(3);
    BranchSystem F3 = branch_table(G3, SystemName::F);
    double lam = G3.field->lambda();
    auto hits = step(G3, F3, lam + 0.3);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].image == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(hits[0].element == G3.gen(1));
    CHECK(hits[0].weight == 1.0);

    // even-q relation: weight-split region
    HeckeGroup G4 = make_group(4);
    BranchSystem R = branch_table(G4, SystemName::FQ_even, 1);
    GroupElement g2i = G4.gen(2).inverse();
    double up = (g2i * g2i).act(ExtPoint::inf()).embed();
    double x = (1.0 + up) / 2; // inside (1, g_2^{-2}.infinity)
    auto h2 = step(G4, R, x);
    REQUIRE(h2.size() == 2);
    bool saw_g = false, saw_qg = false;
    for (const auto& h : h2) {
        if (h.element == G4.gen(2)) { saw_g = true; CHECK(h.weight == 0.5); }
        if (h.element == G4.Qgen(2)) { saw_qg = true; CHECK(h.weight == -0.5); }
    }
    CHECK(saw_g);
    CHECK(saw_qg);

    // GQ_odd q=5: x in (g_4^{-2}.infinity, g_4^{-1}.1) hits (g_4, 1)
    HeckeGroup G5 = make_group(5);
    BranchSystem Q5 = branch_table(G5, SystemName::GQ_odd);
    GroupElement g4i = G5.gen(4).inverse();
    double a = (g4i * g4i).act(ExtPoint::inf()).embed();
    double b = g4i.act(ExtPoint::at(AlgebraicNumber::one(G5.field))).embed();
    double xm = (a + b) / 2;
    auto h5 = step(G5, Q5, xm);
    REQUIRE(h5.size() == 1);
    CHECK(h5[0].element == G5.gen(4));
    CHECK(h5[0].weight == 1.0);

    // exact endpoint -> boundary notice
    CHECK_THROWS_AS(step(G3, F3, 1.0), StepBoundary);
    CHECK_THROWS_AS(step(G3, F3, -0.5), std::domain_error);
}

TEST_CASE("partition sampling") {
    HeckeGroup G5 = make_group(5);
    for (SystemName name : {SystemName::F, SystemName::G, SystemName::FQ_odd,
                            SystemName::GQ_odd}) {
        BranchSystem sys = branch_table(G5, name);
        PartitionReport rep = verify_partition(G5, sys, 10000);
        CHECK(rep.pass);
        CHECK(rep.max_hits == 1);
        CHECK(rep.min_hits == 1);
    }
    HeckeGroup G4 = make_group(4);
    for (SystemName name : {SystemName::FQ_even, SystemName::GQ_even}) {
        BranchSystem sys = branch_table(G4, name, 1);
        PartitionReport rep = verify_partition(G4, sys, 10000);
        CHECK(rep.pass);
        CHECK(rep.max_hits == 2);
        CHECK(rep.min_hits == 1);
    }
}

TEST_CASE("table operator equals the closed-form slow operator") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unif(0, 1);
    Complex s(2, 0);
    auto f = [](Complex z) { return 1.0 / (1.5 + z); };

    // F vs L_{F,s}
    {
        HeckeGroup G = make_group(5);
        BranchSystem sys = branch_table(G, SystemName::F);
        for (int i = 0; i < 25; ++i) {
            double x = 0.05 + 3 * unif(rng);
            Complex lhs = table_operator_apply(G, sys, s, f, x);
            Complex rhs = apply_slow_operator(G, s, Parity::full, f, Complex(x));
            CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
    // FQ_odd vs the odd/even billiard forms
    {
        HeckeGroup G = make_group(5);
        for (int eta : {0, 1}) {
            BranchSystem sys = branch_table(G, SystemName::FQ_odd, eta);
            Parity p = eta == 0 ? Parity::plus : Parity::minus;
            for (int i = 0; i < 25; ++i) {
                double x = 0.02 + 0.96 * unif(rng);
                Complex lhs = table_operator_apply(G, sys, s, f, x);
                Complex rhs = apply_slow_operator(G, s, p, f, Complex(x));
                CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
    // FQ_even: the symmetrized relation averages to the closed form
    {
        HeckeGroup G = make_group(4);
        double hi = G.gen(2).inverse().act(ExtPoint::inf()).embed();
        for (int eta : {0, 1}) {
            BranchSystem sys = branch_table(G, SystemName::FQ_even, eta);
            Parity p = eta == 0 ? Parity::plus : Parity::minus;
            for (int i = 0; i < 100; ++i) {
                double x = hi * (0.02 + 0.96 * unif(rng));
                Complex lhs = table_operator_apply(G, sys, s, f, x);
                Complex rhs = apply_slow_operator(G, s, p, f, Complex(x));
                CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("acceleration identity") {
    HeckeGroup G3 = make_group(3);
    // q=3, x=2.7, n=2: F^2(x) = x-2 = G(x)
    BranchSystem F = branch_table(G3, SystemName::F);
    double x = 2.7;
    auto s1 = step(G3, F, x);
    auto s2 = step(G3, F, s1[0].image);
    CHECK(s2[0].image == doctest::Approx(0.7).epsilon(1e-14));
    BranchSystem Gf = branch_table(G3, SystemName::G);
    auto sg = step(G3, Gf, x);
    REQUIRE(sg.size() == 1);
    CHECK(sg[0].image == doctest::Approx(s2[0].image).epsilon(1e-14));

    for (int q : {3, 5}) {
        HeckeGroup G = make_group(q);
        AccelReport rep = verify_acceleration(G, 20, 25);
        CHECK(rep.pass);
        CHECK(rep.max_error <= 1e-13);
    }
}

TEST_CASE("cuspidal point 1, exactly") {
    for (int q : {3, 5, 7, 9}) CHECK(one_is_cuspidal(make_group(q)));
    for (int q : {4, 6, 8}) {
        HeckeGroup G = make_group(q);
        CHECK_FALSE(one_is_cuspidal(G));
        // instead, 1 is fixed by the hyperbolic g_{q/2}
        ExtPoint one = ExtPoint::at(AlgebraicNumber::one(G.field));
        CHECK(G.gen(G.m).act(one) == one);
        CHECK(G.gen(G.m).classify() == ElementClass::hyperbolic);
    }
}
