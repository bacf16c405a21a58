#pragma once

// Test-only oracles, independent of the enumeration paths they check.

#include "hz/group.hpp"
#include "hz/words.hpp"

#include <map>
#include <set>
#include <vector>

namespace hz::test {

/// Spectral radius by power iteration on the embedded |matrix|; independent
/// of the trace-formula norm() implementation.
inline double power_iteration_norm(const GroupElement& g) {
    auto M = g.embed();
    double m[4] = {std::fabs(M[0]), std::fabs(M[1]), std::fabs(M[2]), std::fabs(M[3])};
    double v0 = 1, v1 = 1, rho = 1;
    for (int i = 0; i < 400; ++i) {
        double w0 = m[0] * v0 + m[1] * v1;
        double w1 = m[2] * v0 + m[3] * v1;
        rho = std::max(std::fabs(w0), std::fabs(w1));
        v0 = w0 / rho;
        v1 = w1 / rho;
    }
    return rho * rho;
}

/// BFS ball over the group generators (plus Q for the extension), deduped
/// by exact projective equality.
inline std::vector<GroupElement> group_ball(const HeckeGroup& G, bool tilde, int depth) {
    std::vector<GroupElement> gens{G.S, G.T, G.T.inverse()};
    if (tilde) gens.push_back(G.Q);
    std::map<std::string, GroupElement> seen;
    GroupElement id = G.S * G.S; // = identity projectively
    seen.emplace(id.str(), id);
    std::vector<GroupElement> frontier{id};
    for (int d = 0; d < depth; ++d) {
        std::vector<GroupElement> next;
        for (const auto& g : frontier) {
            for (const auto& h : gens) {
                GroupElement e = g * h;
                auto key = e.str();
                if (seen.emplace(key, e).second) next.push_back(e);
            }
        }
        frontier = std::move(next);
    }
    std::vector<GroupElement> out;
    out.reserve(seen.size());
    for (auto& [k, v] : seen) out.push_back(v);
    return out;
}

/// Conjugacy classes of hyperbolic elements with N <= cutoff from an
/// explicit ball, merged by conjugator search over the ball. Returns the
/// class count; may over-count if the ball is too shallow, which a
/// comparison test would surface.
inline int ball_class_count(const HeckeGroup& G, bool tilde, double cutoff, int depth,
                            int conj_depth) {
    auto ball = group_ball(G, tilde, depth);
    auto conj = group_ball(G, tilde, conj_depth);
    std::vector<GroupElement> hyp;
    for (const auto& g : ball) {
        if (g.classify() != ElementClass::hyperbolic) continue;
        if (g.norm() > cutoff * (1 + 1e-12)) continue;
        hyp.push_back(g);
    }
    // bucket by exact invariants first
    std::map<std::string, std::vector<GroupElement>> buckets;
    for (const auto& g : hyp) {
        AlgebraicNumber tr = g.trace();
        if (tr.sign() < 0) tr = -tr;
        buckets[tr.str() + "|" + std::to_string(g.det())].push_back(g);
    }
    int classes = 0;
    for (auto& [key, v] : buckets) {
        std::vector<int> rep;
        for (size_t i = 0; i < v.size(); ++i) {
            bool merged = false;
            for (int r : rep) {
                for (const auto& c : conj) {
                    if (c * v[i] * c.inverse() == v[static_cast<size_t>(r)]) {
                        merged = true;
                        break;
                    }
                }
                if (merged) break;
            }
            if (!merged) rep.push_back(static_cast<int>(i));
        }
        classes += static_cast<int>(rep.size());
    }
    return classes;
}

} // namespace hz::test
