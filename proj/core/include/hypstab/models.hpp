#pragma once

#include <utility>
#include <vector>

#include "hypstab/boundary.hpp"
#include "hypstab/riemann.hpp"

namespace hypstab {

// Linearized pipe flow in height/flux variables; the flux is prescribed at
// both ends and the feedback acts on it. Characteristic speeds are lambda1
// and -lambda2 with both parameters positive.
struct DensityFlowParams {
    double lambda1 = 1.0;
    double lambda2 = 2.0;
    double h_star = 2.0;
    double q_star = 3.0;
    double k0_11 = 0.0, k0_12 = 0.0;
    double kl_21 = 0.0, kl_22 = 0.0;
    std::vector<bool> observable_0{true, true};
    std::vector<bool> observable_l{true, true};
    double length = 1.0;
};

std::pair<HyperbolicSystem, BoundaryControl> density_flow(const DensityFlowParams& p);

// Which boundary measurements the feedback may use.
enum class DensityFlowCase { full, q_only, h_only, h_at_0_only };

// Squared robust stability index of the closed loop, evaluated from the
// closed-form expression for the given observability case. q_only is
// identically 1. The h_* cases assume the masked gains are zero and read
// only the height gains from p.
double density_flow_rho0_sq(DensityFlowCase c, const DensityFlowParams& p);

// Channel flow linearized about a subcritical equilibrium (depth h_star,
// velocity v_star); discharge is imposed at both ends. The bottom slope is
// derived from the equilibrium so it is not a parameter.
struct SaintVenantParams {
    double h_star = 2.0;
    double v_star = 3.0;
    double g = 9.81;
    double c_f = 0.1;
    double k0_11 = 0.0, k0_12 = 0.0;
    double kl_21 = 0.0, kl_22 = 0.0;
    std::vector<bool> observable_0{true, true};
    std::vector<bool> observable_l{true, true};
    double length = 1.0;
};

// Equilibrium-determined quantities: bottom slope, characteristic speeds
// (lambda2 < 0), friction-source entries and the certificate weights.
// d1 > d2 holds for every subcritical equilibrium.
struct SaintVenantDerived {
    double s_b = 0.0;
    double lambda1 = 0.0, lambda2 = 0.0;
    double gamma = 0.0, delta = 0.0;
    double d1 = 0.0, d2 = 0.0;
};

SaintVenantDerived saint_venant_derived(const SaintVenantParams& p);

std::pair<HyperbolicSystem, BoundaryControl> saint_venant(const SaintVenantParams& p);

// Closed-form value of the weighted-norm stability test; < 1 certifies
// exponential stability of the closed loop.
double saint_venant_condition(const SaintVenantParams& p);

enum class ControlKey { k0_11, k0_12, kl_21, kl_22 };

// An endpoint is sharp when the stability condition equals 1 there; clamped
// endpoints come from the admissible control box and carry no such equality.
struct ControlInterval {
    double lo = 0.0, hi = 0.0;
    bool lo_sharp = false, hi_sharp = false;
};

// Admissible interval(s) for the partner control on the same boundary when
// `fixed` is pinned to `value` (0 allowed for the restricted-observability
// cases). Throws EmptyRange when no partner choice satisfies the condition.
std::vector<ControlInterval> saint_venant_ranges(const SaintVenantParams& p, ControlKey fixed,
                                                 double value);

} // namespace hypstab
