#pragma once

#include "hz/group.hpp"

#include <stdexcept>
#include <vector>

namespace hz {

struct ChartError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One collocation chart: a real interval seen through a chart coordinate,
/// a holomorphy disk in that coordinate, and Chebyshev-Lobatto nodes.
///
/// D_{q-1}: x on [0, 1/lambda], coordinate y = x.
/// D_r:     x on [1/lambda, lambda], coordinate u = log x / log lambda.
/// D_1:     x on [lambda, inf], coordinate w = 1/x (pullback by Q onto
///          the D_{q-1} interval; shares its node set).
struct DiskChart {
    std::string label;
    double lo = 0, hi = 0;     // chart-coordinate interval
    double center = 0, radius = 0;
    std::vector<double> nodes;   // chart coordinate, descending Lobatto
    std::vector<double> nodes_x; // represented x-points
};

struct Charts {
    int q = 0;
    int basis_size = 0;
    double disk_margin = 0;
    double lambda = 0;
    DiskChart dq1, dr, d1; // dr has dimension 0 for q = 3

    int dim_r() const { return static_cast<int>(dr.nodes.size()); }
};

/// Builds the three charts for basis size N and margin delta, then verifies
/// numerically that every branch map sends the closure of its target disk
/// strictly into the source disk and that no branch denominator vanishes on
/// a chart disk. Throws ChartError on failure.
Charts build_charts(const HeckeGroup& G, int basis_size, double disk_margin = 0.25);

} // namespace hz
