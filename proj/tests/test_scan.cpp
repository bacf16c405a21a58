#include <doctest.h>

#include "hz/scan.hpp"

using namespace hz;

TEST_CASE("scan line basics") {
    HeckeGroup G = make_group(3);
    ScanOptions opt;
    opt.basis_size = 24;

    // empty range
    auto empty = scan_line(G, -1, 0.5, 5.0, 4.0, 0.1, opt);
    CHECK(empty.empty());

    // pole-zone point skipped with notice
    auto line = scan_line(G, -1, 0.5, 0.0, 0.2, 0.1, opt);
    REQUIRE(line.size() == 3);
    CHECK(line[0].skipped); // s = 1/2 itself
    CHECK_FALSE(line[1].skipped);

    CHECK_THROWS_AS(scan_line(G, -1, 1.5, 0, 1, 0.1, opt), std::invalid_argument);
}

TEST_CASE("winding numbers") {
    HeckeGroup G = make_group(3);
    ScanOptions opt;
    opt.basis_size = 24;

    // Euler product region: no zeros for Re s > 1
    Rect far{1.6, 2.4, 0.2, 0.9};
    CHECK(winding_count(G, -1, far, 12, opt) == 0);

    // contour additivity over a 2-piece partition
    Rect left{1.6, 2.0, 0.2, 0.9}, right{2.0, 2.4, 0.2, 0.9};
    CHECK(winding_count(G, -1, left, 12, opt) + winding_count(G, -1, right, 12, opt) ==
          winding_count(G, -1, far, 12, opt));
}

TEST_CASE("refinement failure away from zeros") {
    HeckeGroup G = make_group(3);
    ScanOptions opt;
    opt.basis_size = 24;
    CHECK_THROWS_AS(refine_zero(G, -1, Complex(2.0, 0.3), opt), ScanError);
}

TEST_CASE("the first odd zero of the modular group") {
    HeckeGroup G = make_group(3);
    ScanOptions opt;
    opt.basis_size = 32;
    SpectralZero z = refine_zero(G, -1, Complex(0.5, 9.5), opt);
    CHECK(z.winding == 1);
    CHECK(z.s.imag() == doctest::Approx(9.53369526).epsilon(1e-6));
    CHECK(z.s.real() == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(z.basis_stability < 1e-6);
    CHECK(z.refinement_residual < 1e-8);
    CHECK(z.eigenvalue == doctest::Approx(0.25 + 9.53369526 * 9.53369526).epsilon(1e-6));
}
