#pragma once

#include "hz/group.hpp"

#include <optional>
#include <vector>

namespace hz {

enum class SystemName { F, G, FQ_odd, GQ_odd, FQ_even, GQ_even };

/// One submap x -> h.x on an open interval with exact algebraic endpoints.
/// Weights are c * (+-1)^eta with the sign flag tracked separately.
struct Branch {
    ExtPoint lo, hi;
    GroupElement map_element;
    Rational weight_c = 1;
    bool weight_pm = false; // carries the (+-1)^eta sign
    bool is_point = false;  // isolated triple (x, 1, w) of the even-q relation
};

/// Parabolic branch family h_n = Q^flag g^n with domain h_n^{-1}(section);
/// instantiable on demand.
struct ParabolicFamily {
    GroupElement gen; // g_1 or g_{q-1}
    bool qflag = false;
    ExtPoint sec_lo, sec_hi;
    Rational weight_c = 1;
    bool weight_pm = false;
};

struct BranchSystem {
    SystemName name = SystemName::F;
    int q = 0;
    int eta = 0; // 0: Neumann (+), 1: Dirichlet (-); resolves the pm weights
    ExtPoint carrier_lo, carrier_hi;
    std::vector<Branch> branches;
    std::vector<ParabolicFamily> families;
};

/// Instantiated branch of a family at exponent n.
Branch instantiate(const HeckeGroup& G, const ParabolicFamily& fam, int n);

BranchSystem branch_table(const HeckeGroup& G, SystemName name, int eta = 0);

struct StepHit {
    double image = 0;
    GroupElement element;
    double weight = 0; // resolved with the system's eta
    Rational weight_c;
    bool weight_pm = false;
};

struct StepBoundary : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// All branch hits at a generic carrier point; throws StepBoundary when x
/// coincides with a stored endpoint (the _st sets exclude those).
std::vector<StepHit> step(const HeckeGroup& G, const BranchSystem& sys, double x);

struct PartitionReport {
    int samples = 0;
    int violations = 0;
    int min_hits = 0, max_hits = 0;
    bool pass = false;
};

/// Samples the carrier and checks the hit pattern: slow/fast function
/// systems must see exactly one branch per point; the even-q relations see
/// between one and two.
PartitionReport verify_partition(const HeckeGroup& G, const BranchSystem& sys, int samples,
                                 unsigned seed = 12345);

/// Pointwise transfer operator induced by a slow branch table (no
/// families): sum over branches with preimage in domain.
Complex table_operator_apply(const HeckeGroup& G, const BranchSystem& sys, Complex s,
                             const std::function<Complex(Complex)>& f, double x);

struct AccelReport {
    int checks = 0;
    double max_error = 0;
    bool pass = false;
};

/// F^n = G on the two parabolic blocks for n <= n_max.
AccelReport verify_acceleration(const HeckeGroup& G, int n_max, int samples_per_n,
                                unsigned seed = 777);

/// Exact check whether 1 is cuspidal (odd q: g_{(q+1)/2}^{-1}.infinity = 1).
bool one_is_cuspidal(const HeckeGroup& G);

} // namespace hz
