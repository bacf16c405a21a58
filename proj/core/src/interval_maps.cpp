#include "hz/interval_maps.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hz {

namespace {

ExtPoint act(const GroupElement& g, const ExtPoint& p) { return g.act(p); }

std::pair<ExtPoint, ExtPoint> sorted(ExtPoint a, ExtPoint b) {
    double ea = a.infinite ? std::numeric_limits<double>::infinity() : a.value.embed();
    double eb = b.infinite ? std::numeric_limits<double>::infinity() : b.value.embed();
    if (ea <= eb) return {std::move(a), std::move(b)};
    return {std::move(b), std::move(a)};
}

Branch make_branch(const GroupElement& h, ExtPoint lo, ExtPoint hi, Rational c, bool pm) {
    Branch b;
    auto [l, u] = sorted(std::move(lo), std::move(hi));
    b.lo = std::move(l);
    b.hi = std::move(u);
    b.map_element = h;
    b.weight_c = std::move(c);
    b.weight_pm = pm;
    return b;
}

Branch point_branch(ExtPoint x, Rational c, bool pm, const GroupElement& h) {
    Branch b;
    b.lo = x;
    b.hi = std::move(x);
    b.map_element = h;
    b.weight_c = std::move(c);
    b.weight_pm = pm;
    b.is_point = true;
    return b;
}

bool contains(const Branch& b, double x) {
    if (b.is_point) return false;
    double lo = b.lo.embed(), hi = b.hi.embed();
    return x > lo && x < hi;
}

} // namespace

Branch instantiate(const HeckeGroup& G, const ParabolicFamily& fam, int n) {
    GroupElement h = fam.gen.pow(n);
    if (fam.qflag) h = G.Q * h;
    GroupElement hi_inv = h.inverse();
    return make_branch(h, hi_inv.act(fam.sec_lo), hi_inv.act(fam.sec_hi), fam.weight_c,
                       fam.weight_pm);
}

BranchSystem branch_table(const HeckeGroup& G, SystemName name, int eta) {
    bool even = G.q_even;
    if ((name == SystemName::FQ_even || name == SystemName::GQ_even) && !even)
        throw std::invalid_argument("branch_table: even-q system requested for odd q");
    if ((name == SystemName::FQ_odd || name == SystemName::GQ_odd) && even)
        throw std::invalid_argument("branch_table: odd-q system requested for even q");
    FieldPtr F = G.field;
    AlgebraicNumber zero = AlgebraicNumber::zero(F), one = AlgebraicNumber::one(F);
    ExtPoint p0 = ExtPoint::at(zero), p1 = ExtPoint::at(one), pinf = ExtPoint::inf();
    ExtPoint plam = ExtPoint::at(G.lambda);

    BranchSystem sys;
    sys.name = name;
    sys.q = G.q;
    sys.eta = eta;

    auto gi = [&](int k) { return G.gen(k).inverse(); };

    switch (name) {
    case SystemName::F: {
        sys.carrier_lo = p0;
        sys.carrier_hi = pinf;
        for (int k = 1; k <= G.q - 1; ++k)
            sys.branches.push_back(make_branch(G.gen(k), gi(k).act(p0), gi(k).act(pinf), 1, false));
        break;
    }
    case SystemName::G: {
        sys.carrier_lo = p0;
        sys.carrier_hi = pinf;
        for (int k = 2; k <= G.q - 2; ++k)
            sys.branches.push_back(make_branch(G.gen(k), gi(k).act(p0), gi(k).act(pinf), 1, false));
        // acceleration families on the two parabolic generators
        sys.families.push_back({G.gen(1), false, p0, ExtPoint::at((gi(1).act(p0)).value), 1, false});
        sys.families.push_back({G.gen(G.q - 1), false, gi(G.q - 1).act(pinf), pinf, 1, false});
        break;
    }
    case SystemName::FQ_odd: {
        sys.carrier_lo = p0;
        sys.carrier_hi = p1;
        for (int k = G.m; k <= G.q - 1; ++k) {
            sys.branches.push_back(make_branch(G.gen(k), gi(k).act(p0), gi(k).act(p1), 1, false));
            sys.branches.push_back(make_branch(G.Qgen(k), gi(k).act(p1), gi(k).act(pinf), 1, true));
        }
        break;
    }
    case SystemName::GQ_odd: {
        sys.carrier_lo = p0;
        sys.carrier_hi = p1;
        for (int k = G.m; k <= G.q - 2; ++k) {
            sys.branches.push_back(make_branch(G.gen(k), gi(k).act(p0), gi(k).act(p1), 1, false));
            sys.branches.push_back(make_branch(G.Qgen(k), gi(k).act(p1), gi(k).act(pinf), 1, true));
        }
        sys.families.push_back(
            {G.gen(G.q - 1), false, gi(G.q - 1).act(pinf), p1, 1, false});
        sys.families.push_back({G.gen(G.q - 1), true, p0, p1, 1, true});
        break;
    }
    case SystemName::FQ_even: {
        // final symmetrized relation; carrier (0, g_m^{-1}.infinity)
        GroupElement gm_inv = gi(G.m);
        sys.carrier_lo = p0;
        sys.carrier_hi = gm_inv.act(pinf);
        for (int k = G.m + 1; k <= G.q - 1; ++k) {
            GroupElement gk_inv = gi(k);
            ExtPoint a = gk_inv.act(p0);
            ExtPoint b = gk_inv.act(gm_inv.act(p0));
            ExtPoint c = gk_inv.act(p1);
            ExtPoint d = gk_inv.act(gm_inv.act(pinf));
            ExtPoint e = gk_inv.act(pinf);
            sys.branches.push_back(make_branch(G.gen(k), a, b, 1, false));
            sys.branches.push_back(make_branch(G.gen(k), b, c, 1, false));
            sys.branches.push_back(make_branch(G.Qgen(k), b, c, 1, true));
            sys.branches.push_back(make_branch(G.Qgen(k), c, d, 1, true));
            sys.branches.push_back(make_branch(G.gen(k), c, d, 1, false));
            sys.branches.push_back(make_branch(G.Qgen(k), d, e, 1, true));
            sys.branches.push_back(point_branch(c, 1, false, G.gen(k)));
            sys.branches.push_back(point_branch(c, 1, true, G.Qgen(k)));
        }
        ExtPoint m_a = gm_inv.act(p0);
        ExtPoint m_b = (gm_inv * gm_inv).act(p0);
        ExtPoint m_c = p1;
        ExtPoint m_d = (gm_inv * gm_inv).act(pinf);
        ExtPoint m_e = gm_inv.act(pinf);
        Rational half(1, 2);
        sys.branches.push_back(make_branch(G.gen(G.m), m_a, m_b, half, false));
        sys.branches.push_back(make_branch(G.gen(G.m), m_b, m_c, half, false));
        sys.branches.push_back(make_branch(G.Qgen(G.m), m_b, m_c, half, true));
        sys.branches.push_back(make_branch(G.gen(G.m), m_c, m_d, half, false));
        sys.branches.push_back(make_branch(G.Qgen(G.m), m_c, m_d, half, true));
        sys.branches.push_back(make_branch(G.Qgen(G.m), m_d, m_e, half, true));
        sys.branches.push_back(point_branch(gm_inv.act(p1), half, false, G.gen(G.m)));
        sys.branches.push_back(point_branch(gm_inv.act(p1), half, true, G.Qgen(G.m)));
        break;
    }
    case SystemName::GQ_even: {
        // read off the fast even operator: sections (0, 1/lambda) and
        // (1/lambda, lambda); domains are the branch preimages of the merged
        // target (0, lambda).
        sys.carrier_lo = p0;
        sys.carrier_hi = plam;
        AlgebraicNumber inv_lam = G.lambda.inverse();
        ExtPoint pinvlam = ExtPoint::at(inv_lam);
        Rational half(1, 2);
        for (int k = G.m; k <= G.q - 2; ++k) {
            Rational c = (k == G.m) ? half : Rational(1);
            GroupElement gk_inv = gi(k);
            sys.branches.push_back(
                make_branch(G.gen(k), gk_inv.act(p0), gk_inv.act(plam), c, false));
            sys.branches.push_back(
                make_branch(G.Qgen(k), gk_inv.act(pinvlam), gk_inv.act(pinf), c, true));
        }
        sys.families.push_back({G.gen(G.q - 1), false, pinvlam, plam, 1, false});
        sys.families.push_back({G.gen(G.q - 1), true, p0, plam, 1, true});
        break;
    }
    }
    return sys;
}

std::vector<StepHit> step(const HeckeGroup& G, const BranchSystem& sys, double x) {
    double lo = sys.carrier_lo.embed(), hi = sys.carrier_hi.embed();
    if (!(x > lo && x < hi))
        throw std::domain_error("step: point outside the carrier interval");

    auto hit_of = [&](const Branch& b) {
        StepHit h;
        h.image = mobius_act(b.map_element, Complex(x)).real();
        h.element = b.map_element;
        h.weight_c = b.weight_c;
        h.weight_pm = b.weight_pm;
        double sign = (b.weight_pm && sys.eta == 1) ? -1.0 : 1.0;
        h.weight = sign * b.weight_c.get_d();
        return h;
    };

    std::vector<StepHit> hits;
    std::vector<std::string> boundary;
    auto consider = [&](const Branch& b) {
        if (b.is_point) {
            if (x == b.lo.embed()) boundary.push_back("point triple at x");
            return;
        }
        double blo = b.lo.embed(), bhi = b.hi.embed();
        if (x == blo || x == bhi) {
            boundary.push_back(b.map_element.str());
            return;
        }
        if (contains(b, x)) hits.push_back(hit_of(b));
    };

    for (const Branch& b : sys.branches) consider(b);
    double lam = G.field->lambda();
    for (const ParabolicFamily& fam : sys.families) {
        // Invert the endpoint formulas to find the candidate exponents:
        // base 1: p + n lam; base q-1: p/(n lam p + 1); flagged: 1/(p + n lam).
        bool base1 = fam.gen == G.gen(1);
        auto n_of = [&](const ExtPoint& p) -> double {
            if (base1) return p.infinite ? 1.0 : (x - p.embed()) / lam;
            if (!fam.qflag) {
                if (p.infinite) return 1.0 / (x * lam);
                return (1.0 / x - 1.0 / p.embed()) / lam;
            }
            return p.infinite ? 1e18 : (1.0 / x - p.embed()) / lam;
        };
        double na = n_of(fam.sec_lo), nb = n_of(fam.sec_hi);
        long lo_n = static_cast<long>(std::floor(std::min(na, nb))) - 2;
        long hi_n = static_cast<long>(std::ceil(std::max(na, nb))) + 2;
        lo_n = std::max(lo_n, 1L);
        hi_n = std::min(hi_n, lo_n + 16);
        for (long n = lo_n; n <= hi_n; ++n) consider(instantiate(G, fam, static_cast<int>(n)));
    }

    if (!boundary.empty()) {
        std::ostringstream os;
        os << "step: x = " << x << " is a stored branch endpoint; adjacent branches:";
        for (const auto& s : boundary) os << " " << s;
        throw StepBoundary(os.str());
    }
    return hits;
}

PartitionReport verify_partition(const HeckeGroup& G, const BranchSystem& sys, int samples,
                                 unsigned seed) {
    PartitionReport rep;
    rep.samples = samples;
    double lo = sys.carrier_lo.embed();
    double hi = sys.carrier_hi.infinite ? 0 : sys.carrier_hi.embed();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0, 1);
    int expected_lo = 1, expected_hi = 1;
    if (sys.name == SystemName::FQ_even || sys.name == SystemName::GQ_even) expected_hi = 2;
    rep.min_hits = std::numeric_limits<int>::max();
    for (int i = 0; i < samples; ++i) {
        double x;
        if (sys.carrier_hi.infinite) {
            // sample (0, inf) with a heavy tail through x = u/(1-u)
            double u = unif(rng);
            x = u / (1 - u + 1e-300);
            if (!(x > lo) || !std::isfinite(x)) { --i; continue; }
        } else {
            x = lo + (hi - lo) * unif(rng);
            if (!(x > lo && x < hi)) { --i; continue; }
        }
        std::vector<StepHit> hits;
        try {
            hits = step(G, sys, x);
        } catch (const StepBoundary&) {
            --i;
            continue;
        }
        int h = static_cast<int>(hits.size());
        rep.min_hits = std::min(rep.min_hits, h);
        rep.max_hits = std::max(rep.max_hits, h);
        if (h < expected_lo || h > expected_hi) ++rep.violations;
    }
    rep.pass = rep.violations == 0;
    return rep;
}

Complex table_operator_apply(const HeckeGroup& G, const BranchSystem& sys, Complex s,
                             const std::function<Complex(Complex)>& f, double x) {
    if (!sys.families.empty())
        throw std::invalid_argument("table_operator_apply: slow (family-free) tables only");
    (void)G;
    Complex acc(0);
    for (const Branch& b : sys.branches) {
        if (b.is_point) continue;
        GroupElement inv = b.map_element.inverse();
        Complex y = mobius_act(inv, Complex(x));
        if (!contains(b, y.real())) continue;
        double sign = (b.weight_pm && sys.eta == 1) ? -1.0 : 1.0;
        acc += sign * b.weight_c.get_d() * j_factor(inv, Complex(x), s) * f(y);
    }
    return acc;
}

AccelReport verify_acceleration(const HeckeGroup& G, int n_max, int samples_per_n,
                                unsigned seed) {
    AccelReport rep;
    double lam = G.field->lambda();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0, 1);
    auto g1 = G.gen(1).embed();
    auto gq = G.gen(G.q - 1).embed();
    auto apply = [](const std::array<double, 4>& M, double x) {
        return (M[0] * x + M[1]) / (M[2] * x + M[3]);
    };
    for (int n = 1; n <= n_max; ++n) {
        for (int i = 0; i < samples_per_n; ++i) {
            // Points from the middle of each parabolic block: the identity is
            // exact, but float iteration amplifies roundoff near the block
            // endpoints (nearly neutral dynamics).
            double w = 0.25 + 0.5 * unif(rng);
            // g_1 family: x in (n lam, (n+1) lam), F^n x = x - n lam
            double x = (n + w) * lam;
            double fx = x;
            for (int j = 0; j < n; ++j) fx = apply(g1, fx);
            double gx = x - n * lam;
            rep.max_error = std::max(rep.max_error, std::fabs(fx - gx) / std::max(1.0, std::fabs(gx)));
            // g_{q-1} family: x in (1/((n+1)lam), 1/(n lam))
            double y = 1.0 / ((n + w) * lam);
            double fy = y;
            for (int j = 0; j < n; ++j) fy = apply(gq, fy);
            double gy = y / (1 - n * lam * y);
            rep.max_error = std::max(rep.max_error, std::fabs(fy - gy) / std::max(1.0, std::fabs(gy)));
            rep.checks += 2;
        }
    }
    rep.pass = rep.max_error <= 1e-13;
    return rep;
}

bool one_is_cuspidal(const HeckeGroup& G) {
    if (G.q_even) return false;
    ExtPoint img = G.gen(G.m).inverse().act(ExtPoint::inf());
    return !img.infinite && img.value == AlgebraicNumber::one(G.field);
}

} // namespace hz
