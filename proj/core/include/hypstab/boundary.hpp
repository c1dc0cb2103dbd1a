#pragma once

#include <vector>

#include "hypstab/matrix.hpp"
#include "hypstab/riemann.hpp"

namespace hypstab {

// Physical-variable boundary data:
//   a_phys * Y(t,0) + b_phys * Y(t,L) = k0 * Y(t,0) + kl * Y(t,L).
// observable_0[i] / observable_l[i] say whether variable i can be measured
// (and therefore used by the feedback) at that end; gain columns for
// unobservable variables must be zero.
struct BoundaryControl {
    Matrix a_phys;
    Matrix b_phys;
    Matrix k0;
    Matrix kl;
    std::vector<bool> observable_0;
    std::vector<bool> observable_l;
    // strict: reject gains on masked columns instead of zeroing them
    bool strict = false;
};

BoundaryControl enforce_observability(const BoundaryControl& bc);

enum class Structure { general, rank_one, anti_diagonal_2x2 };

// Riemann-coordinate closure:
//   (R+(t,0); R-(t,L)) = k * (R+(t,L); R-(t,0)),
// first m rows incoming at x=0, last n-m incoming at x=L.
struct CouplingMatrix {
    Matrix k;
    Structure structure = Structure::general;
    std::vector<double> u, v;          // rank_one: k = u v^T
    double anti_a = 0.0, anti_b = 0.0; // anti_diagonal_2x2: [[0,a],[b,0]]
};

CouplingMatrix build_coupling(const RiemannForm& rf, const BoundaryControl& bc);

// All-positive-speed feedback-form criterion for kl = u v^T: the stability
// margin |v^T T| . |((a_phys - k0) T)^-1 u| with entrywise absolute values.
double rank_one_condition(const RiemannForm& rf, const BoundaryControl& bc,
                          const std::vector<double>& u, const std::vector<double>& v);

} // namespace hypstab
