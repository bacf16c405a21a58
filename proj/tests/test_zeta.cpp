#include <doctest.h>

#include "hz/zeta.hpp"

#include <cmath>

using namespace hz;

TEST_CASE("trace formulas") {
    double N = 6.854101966249685;
    CHECK(std::abs(tr_tau(N, Complex(1, 0)) - Complex(1.0 / (N - 1))) < 1e-14);
    CHECK(std::abs(tr_tau(N, Complex(0, 0)) - Complex(N / (N - 1))) < 1e-14);
    CHECK(std::abs(tr_tau(2.0, Complex(50, 0))) < 1e-12);
    CHECK_THROWS_AS(tr_tau(0.9, Complex(2, 0)), std::domain_error);

    // det +1: both parities collapse to (1/2^k) tr_tau
    for (int k : {0, 1, 2}) {
        Complex s(1.7, 0.3);
        Complex a = tr_b_pm(N, 1, k, s, +1, true);
        Complex b = tr_b_pm(N, 1, k, s, -1, true);
        Complex c = std::ldexp(1.0, -k) * tr_tau(N, s);
        CHECK(std::abs(a - b) < 1e-15);
        CHECK(std::abs(a - c) < 1e-15);
    }

    // det -1 with the even-q half weight; direct arithmetic oracle
    double Nm = 3 + 2 * std::sqrt(2.0);
    Complex s2(2, 0);
    Complex expect = -0.5 * std::pow(Nm, -2.0) / (1.0 + 1.0 / Nm);
    CHECK(std::abs(tr_b_pm(Nm, -1, 1, s2, -1, true) - expect) < 1e-15);
    // odd q ignores the 1/2^k weight
    CHECK(std::abs(tr_b_pm(Nm, -1, 1, s2, -1, false) - 2.0 * expect) < 1e-15);
}

TEST_CASE("boundary word sums reproduce the closed form (even q)") {
    for (int q : {4, 6}) {
        HeckeGroup G = make_group(q);
        double Nm = G.gen(G.m).norm();
        for (Complex s : {Complex(2, 0), Complex(1.5, 0.5)}) {
            for (int p = 1; p <= 3; ++p) {
                // all 2^p words over {g_m, Qg_m}
                Complex sum(0);
                double Np = std::pow(Nm, p);
                for (int mask = 0; mask < (1 << p); ++mask) {
                    int eps = __builtin_popcount(static_cast<unsigned>(mask));
                    int det = eps % 2 == 0 ? 1 : -1;
                    sum += tr_b_pm(Np, det, p, s, -1, true);
                }
                Complex closed = std::exp(-(s + 1.0) * std::log(Np)) /
                                 (1.0 - std::pow(Np, -2.0));
                CHECK(std::abs(sum - closed) < 1e-12 * std::max(1.0, std::abs(closed)));
            }
        }
    }
}

TEST_CASE("trace power sums: parity flip = det sign flip") {
    HeckeGroup G = make_group(5);
    Complex s(2, 0);
    TruncationSpec tr;
    tr.exponent_cap = 40;
    TraceSum plus = trace_power_sum(G, 2, s, +1, tr);
    TraceSum minus = trace_power_sum(G, 2, s, -1, tr);
    // recompute: plus with det -1 terms negated equals minus
    Complex flipped(0);
    WordCaps caps;
    caps.max_exponent = 40;
    enumerate_reduced_words(G, Alphabet::GQ, 2, caps, [&](const Word& w, const BTags& t) {
        if (!(t.b1 || t.b4)) return;
        double N = word_norm(G, w);
        int det = word_det(w);
        auto [eps, k] = eps_and_k(G, w);
        (void)eps;
        Complex term = tr_b_pm(N, det, k, s, +1, G.q_even);
        flipped += det == 1 ? term : -term;
    });
    CHECK(std::abs(flipped - minus.value) < 1e-14);
    CHECK(plus.word_count == minus.word_count);

    CHECK_THROWS_AS(trace_power_sum(G, 1, Complex(0.4, 0), +1, tr), std::domain_error);
    TruncationSpec no_tail;
    no_tail.tail_geometric = false;
    CHECK_THROWS_AS(trace_power_sum(G, 1, s, +1, no_tail), std::invalid_argument);
}

TEST_CASE("selberg zeta basics") {
    HeckeGroup G = make_group(3);
    TruncationSpec tr;
    tr.norm_cutoff = 500;
    ZetaValue z = selberg_Z(G, Complex(2.5, 0), tr);
    CHECK(std::abs(std::exp(z.log_value) - z.value) < 1e-12 * std::abs(z.value));
    CHECK(z.certified);

    // majorization at Re s = 3 (class terms plus a slack for the primitive
    // powers beyond the cutoff, which the log sum includes)
    ClassList cl = enumerate_conj_classes(G, GroupTag::Gamma, 500);
    double bound = 0;
    for (const auto& rec : cl.classes)
        bound += std::pow(rec.N, -3.0) / (1 - 1 / rec.N) / rec.n;
    double power_tail = cl.classes.size() * std::pow(500.0, -3.0) * 2;
    ZetaValue z3 = selberg_Z(G, Complex(3, 0), tr, &cl);
    CHECK(std::abs(z3.log_value) <= bound + power_tail);

    CHECK_THROWS_AS(selberg_Z(G, Complex(0.9, 0), tr), std::domain_error);

    // doubling the cutoff moves the value by no more than the tail estimate
    for (int q : {3, 4, 5}) {
        HeckeGroup Gq = make_group(q);
        TruncationSpec small, big;
        small.norm_cutoff = 300;
        big.norm_cutoff = 600;
        ZetaValue zs = selberg_Z(Gq, Complex(2, 0), small);
        ZetaValue zb = selberg_Z(Gq, Complex(2, 0), big);
        CHECK(std::abs(zb.value - zs.value) <= zs.tail_estimate);
    }
}

TEST_CASE("zeta factorizations at desk scale") {
    // odd q: Z+ Z- = Z (det-twist cancellation)
    {
        HeckeGroup G = make_group(5);
        TruncationSpec tr;
        tr.norm_cutoff = 900;
        Complex s(2, 0);
        ZetaValue zp = Z_pm(G, s, +1, tr);
        ZetaValue zm = Z_pm(G, s, -1, tr);
        ZetaValue z = selberg_Z(G, s, tr);
        CHECK(std::abs(zp.value * zm.value - z.value) < 2e-5);
    }
    // even q: same identity with the boundary factor in closed form
    {
        HeckeGroup G = make_group(4);
        TruncationSpec tr;
        tr.norm_cutoff = 4000;
        Complex s(2, 0);
        ZetaValue zp = Z_pm(G, s, +1, tr);
        ZetaValue zm = Z_pm(G, s, -1, tr);
        ZetaValue z = selberg_Z(G, s, tr);
        CHECK(std::abs(zp.value * zm.value - z.value) < 1e-5);
    }
}

TEST_CASE("Zc products") {
    HeckeGroup G = make_group(4);
    for (Complex s : {Complex(2, 0), Complex(0.7, 0.4), Complex(1.2, -1)}) {
        ZetaValue p = Zc_pm(G, s, +1);
        ZetaValue m = Zc_pm(G, s, -1);
        CHECK(std::abs(p.value * m.value - Complex(1)) < 1e-13);
    }
    // direct product oracle at s = 2
    double A = std::pow(G.gen(2).norm(), 2);
    Complex direct(1);
    for (int k = 0; k < 60; ++k) {
        double x = std::pow(A, -(2.0 + k));
        direct *= std::pow(Complex(1 - x), (k % 2 == 0) ? 1.0 : -1.0);
    }
    ZetaValue m2 = Zc_pm(G, Complex(2, 0), -1);
    CHECK(std::abs(m2.value - direct) < 1e-13);
    CHECK(m2.value.real() > 0.99);
    CHECK(m2.value.real() < 1.0);

    // limit s -> 0+: the k=0 factor of Zc- vanishes
    double prev = 1;
    for (double eps : {0.3, 0.1, 0.03, 0.01}) {
        double v = std::abs(Zc_pm(G, Complex(eps, 0), -1).value);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < 0.15);

    HeckeGroup G5 = make_group(5);
    CHECK_THROWS_AS(Zc_pm(G5, Complex(2, 0), +1), std::domain_error);

    // real positive output for real s > 0
    ZetaValue zr = Zc_pm(G, Complex(0.8, 0), -1);
    CHECK(std::abs(zr.value.imag()) < 1e-15);
    CHECK(zr.value.real() > 0);
}

TEST_CASE("all factors tend to 1 far right") {
    HeckeGroup G = make_group(5);
    TruncationSpec tr;
    tr.norm_cutoff = 200;
    ZetaValue zv = ZV_pm(G, Complex(40, 0), -1, tr);
    CHECK(std::abs(zv.log_value) < 1e-10);
    CHECK(std::abs(zv.value - Complex(1)) < 1e-10);
}

TEST_CASE("Venkov relations at desk scale") {
    // odd q: Z^V = Z^4
    {
        HeckeGroup G = make_group(5);
        TruncationSpec tr;
        tr.norm_cutoff = 900;
        Complex s(2, 0);
        for (int parity : {+1, -1}) {
            ZetaValue zv = ZV_pm(G, s, parity, tr);
            ZetaValue z = Z_pm(G, s, parity, tr);
            Complex z4 = std::pow(z.value, 4);
            CHECK(std::abs(zv.value - z4) < 3e-5 * std::abs(z4));
        }
    }
    // even q: Z^V = Z^4 Zc
    {
        HeckeGroup G = make_group(4);
        TruncationSpec tr;
        tr.norm_cutoff = 4000;
        Complex s(2, 0);
        for (int parity : {+1, -1}) {
            ZetaValue zv = ZV_pm(G, s, parity, tr);
            ZetaValue z = Z_pm(G, s, parity, tr);
            ZetaValue zc = Zc_pm(G, s, parity);
            Complex rhs = std::pow(z.value, 4) * zc.value;
            CHECK(std::abs(zv.value - rhs) < 3e-5 * std::abs(rhs));
        }
    }
}
