#pragma once

#include <optional>
#include <vector>

#include "hypstab/matrix.hpp"

namespace hypstab {

// d/dt Y + flux * d/dx Y (+ source * Y) = 0 on [0, length]
struct HyperbolicSystem {
    int n = 0;
    Matrix flux;
    std::optional<Matrix> source; // absent: conservation law
    double length = 1.0;
};

// Diagonalized form: d/dt R + diag(lambda) d/dx R (+ S R) = 0, R = T^-1 Y.
// lambda is strictly decreasing with the first m entries positive.
struct RiemannForm {
    std::vector<double> lambda;
    int m = 0;
    Matrix transform;     // T, columns are eigenvectors of flux
    Matrix transform_inv; // T^-1
    std::optional<Matrix> source_coupling; // S = T^-1 * source * T
    double length = 1.0;

    // T split after row/column m; consumed by the boundary assembly
    Matrix t11, t12, t21, t22;
};

RiemannForm to_riemann(const HyperbolicSystem& sys);

std::vector<double> physical_to_riemann(const RiemannForm& rf, const std::vector<double>& y);
std::vector<double> riemann_to_physical(const RiemannForm& rf, const std::vector<double>& r);

} // namespace hypstab
