#include "hz/charts.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace hz {

namespace {

std::vector<double> lobatto(int n, double a, double b) {
    // Descending Chebyshev-Lobatto points mapped to [a, b]; endpoints included.
    std::vector<double> p(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        double x = std::cos(j * M_PI / (n - 1));
        p[static_cast<size_t>(j)] = a + (b - a) * (x + 1) / 2;
    }
    return p;
}

struct BranchCheck {
    std::string name;
    GroupElement inv;       // matrix applied to the target point
    const DiskChart* target;
    const DiskChart* source;
};

} // namespace

Charts build_charts(const HeckeGroup& G, int basis_size, double disk_margin) {
    if (basis_size < 4) throw std::invalid_argument("build_charts: basis size must be >= 4");
    if (!(disk_margin > 0)) throw std::invalid_argument("build_charts: disk margin must be > 0");
    Charts ch;
    ch.q = G.q;
    ch.basis_size = basis_size;
    ch.disk_margin = disk_margin;
    double lam = G.field->lambda();
    ch.lambda = lam;

    ch.dq1.label = "Dq1";
    ch.dq1.lo = 0;
    ch.dq1.hi = 1 / lam;
    // Shifted disk: big enough that 1/(t + lambda) maps it into itself,
    // small enough that finite branches land inside the Dr disk.
    ch.dq1.center = (0.5 + disk_margin / 2) / lam;
    ch.dq1.radius = (0.5 + disk_margin) / lam;
    ch.dq1.nodes = lobatto(basis_size, 0, 1 / lam);
    ch.dq1.nodes_x = ch.dq1.nodes;

    ch.d1.label = "D1";
    ch.d1.lo = 0;
    ch.d1.hi = 1 / lam;
    ch.d1.center = ch.dq1.center;
    ch.d1.radius = ch.dq1.radius;
    ch.d1.nodes = ch.dq1.nodes;
    ch.d1.nodes_x.resize(ch.d1.nodes.size());
    for (size_t i = 0; i < ch.d1.nodes.size(); ++i)
        ch.d1.nodes_x[i] = ch.d1.nodes[i] == 0 ? std::numeric_limits<double>::infinity()
                                               : 1.0 / ch.d1.nodes[i];

    ch.dr.label = "Dr";
    ch.dr.lo = -1;
    ch.dr.hi = 1;
    ch.dr.center = 0;
    ch.dr.radius = 1 + disk_margin;
    if (G.q > 3) {
        ch.dr.nodes = lobatto(basis_size, -1, 1);
        ch.dr.nodes_x.resize(ch.dr.nodes.size());
        for (size_t i = 0; i < ch.dr.nodes.size(); ++i)
            ch.dr.nodes_x[i] = std::pow(lam, ch.dr.nodes[i]);
    }
    // q = 3: the middle interval [1/lambda, lambda] degenerates to a point
    // and the chart carries dimension 0.

    // Branch checks: pull back sampled boundary points of each target disk
    // through the branch matrices and require them strictly inside the
    // source disk.
    std::vector<BranchCheck> checks;
    auto add = [&](std::string name, const GroupElement& h, const DiskChart& tgt,
                   const DiskChart& src) {
        checks.push_back({std::move(name), h.inverse(), &tgt, &src});
    };
    for (int n = 1; n <= 4; ++n) {
        GroupElement Qg = G.Q * G.gen(G.q - 1).pow(n);
        add("Qg_{q-1}^" + std::to_string(n) + "->Dq1", Qg, ch.dq1, ch.dq1);
        GroupElement g1n = G.gen(1).pow(n);
        add("g_1^" + std::to_string(n) + "->Dq1", g1n, ch.dq1, ch.d1);
        if (G.q > 3) {
            add("Qg_{q-1}^" + std::to_string(n) + "->Dr", Qg, ch.dr, ch.dq1);
            GroupElement gq1 = G.gen(G.q - 1).pow(n);
            add("g_{q-1}^" + std::to_string(n) + "->Dr", gq1, ch.dr, ch.dq1);
            add("g_1^" + std::to_string(n) + "->Dr", g1n, ch.dr, ch.d1);
        }
    }
    for (int k = 2; k <= G.q - 2; ++k) {
        add("g_" + std::to_string(k) + "->Dq1", G.gen(k), ch.dq1, ch.dr);
        add("g_" + std::to_string(k) + "->Dr", G.gen(k), ch.dr, ch.dr);
        add("g_" + std::to_string(k) + "->D1", G.gen(k), ch.d1, ch.dr);
        if (k >= G.m) {
            GroupElement Qg = G.Qgen(k);
            add("Qg_" + std::to_string(k) + "->Dq1", Qg, ch.dq1, ch.dr);
            add("Qg_" + std::to_string(k) + "->Dr", Qg, ch.dr, ch.dr);
        }
    }

    const int samples = 48;
    const double hug = 1e-9;
    for (const auto& c : checks) {
        auto M = c.inv.embed();
        for (int i = 0; i < samples; ++i) {
            double th = 2 * M_PI * i / samples;
            std::complex<double> z = c.target->center +
                                     c.target->radius * std::complex<double>(std::cos(th), std::sin(th));
            // Branch image in x, expressed through the target chart
            // coordinate. The D1 chart acts on w = 1/x directly, so the
            // matrix columns swap instead of inverting z.
            std::complex<double> den, img;
            if (c.target->label == "Dr") {
                std::complex<double> x = std::exp(z * std::log(lam));
                den = M[2] * x + M[3];
                img = (M[0] * x + M[1]) / den;
            } else if (c.target->label == "D1") {
                den = M[2] + M[3] * z;
                img = (M[0] + M[1] * z) / den;
            } else {
                den = M[2] * z + M[3];
                img = (M[0] * z + M[1]) / den;
            }
            if (!(den.real() > 1e-9))
                throw ChartError("build_charts: branch denominator left the right half plane (" +
                                 c.name + "); adjust disk_margin");
            std::complex<double> w;
            if (c.source->label == "Dr") {
                if (img.real() <= 0)
                    throw ChartError("build_charts: branch image left the right half plane (" +
                                     c.name + "); adjust disk_margin");
                w = std::log(img) / std::log(lam);
            } else if (c.source->label == "D1") {
                w = 1.0 / img;
            } else {
                w = img;
            }
            if (std::abs(w - c.source->center) >= c.source->radius * (1 - hug)) {
                std::ostringstream os;
                os << "build_charts: contraction check failed for branch " << c.name
                   << " at boundary sample " << i << " (image |w-c| = "
                   << std::abs(w - c.source->center) << ", source radius " << c.source->radius
                   << "); try a different disk_margin";
                throw ChartError(os.str());
            }
        }
    }
    return ch;
}

} // namespace hz
