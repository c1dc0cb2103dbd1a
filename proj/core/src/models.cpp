#include "hypstab/models.hpp"

#include <cmath>

#include "hypstab/errors.hpp"

namespace hypstab {

namespace {

void check_mask(const std::vector<bool>& mask, const char* which) {
    if (mask.size() != 2) throw InvalidValue(std::string(which) + " mask needs two entries");
}

double guarded_div(double num, double den, const char* what) {
    if (den == 0.0) throw DegenerateDenominator(what);
    return num / den;
}

} // namespace

std::pair<HyperbolicSystem, BoundaryControl> density_flow(const DensityFlowParams& p) {
    if (!(p.lambda1 > 0.0) || !(p.lambda2 > 0.0))
        throw InvalidValue("characteristic speed parameters must be positive");
    if (!(p.length > 0.0)) throw InvalidValue("length must be positive");
    check_mask(p.observable_0, "x=0");
    check_mask(p.observable_l, "x=L");
    HyperbolicSystem sys;
    sys.n = 2;
    sys.flux = Matrix{{0.0, 1.0}, {p.lambda1 * p.lambda2, p.lambda1 - p.lambda2}};
    sys.length = p.length;
    BoundaryControl bc;
    bc.a_phys = Matrix{{0.0, 1.0}, {0.0, 0.0}};
    bc.b_phys = Matrix{{0.0, 0.0}, {0.0, 1.0}};
    bc.k0 = Matrix{{p.k0_11, p.k0_12}, {0.0, 0.0}};
    bc.kl = Matrix{{0.0, 0.0}, {p.kl_21, p.kl_22}};
    bc.observable_0 = p.observable_0;
    bc.observable_l = p.observable_l;
    return {std::move(sys), enforce_observability(bc)};
}

double density_flow_rho0_sq(DensityFlowCase c, const DensityFlowParams& p) {
    if (!(p.lambda1 > 0.0) || !(p.lambda2 > 0.0))
        throw InvalidValue("characteristic speed parameters must be positive");
    const double l1 = p.lambda1, l2 = p.lambda2;
    switch (c) {
        case DensityFlowCase::full:
            return std::abs(guarded_div(
                (-p.k0_11 + (p.k0_12 - 1.0) * l2) * (p.kl_21 + (p.kl_22 - 1.0) * l1),
                (-p.k0_11 + (1.0 - p.k0_12) * l1) * (p.kl_21 + (1.0 - p.kl_22) * l2),
                "gains cancel an outgoing characteristic"));
        case DensityFlowCase::q_only:
            if ((1.0 - p.k0_12) * l1 * (1.0 - p.kl_22) * l2 == 0.0)
                throw DegenerateDenominator("flux gain of 1 makes the closed loop degenerate");
            return 1.0;
        case DensityFlowCase::h_only:
            return std::abs(guarded_div((-p.k0_11 - l2) * (p.kl_21 - l1),
                                        (-p.k0_11 + l1) * (p.kl_21 + l2),
                                        "height gain equal to a characteristic speed"));
        case DensityFlowCase::h_at_0_only:
            return std::abs(guarded_div((-p.k0_11 - l2) * l1, (-p.k0_11 + l1) * l2,
                                        "height gain equal to a characteristic speed"));
    }
    throw InvalidValue("unknown observability case");
}

SaintVenantDerived saint_venant_derived(const SaintVenantParams& p) {
    if (!(p.h_star > 0.0) || !(p.g > 0.0)) throw InvalidValue("depth and gravity must be positive");
    if (!(p.v_star > 0.0)) throw InvalidValue("equilibrium velocity must be positive");
    if (!(p.c_f > 0.0)) throw InvalidValue("friction coefficient must be positive");
    const double c = std::sqrt(p.g * p.h_star);
    if (!(p.v_star < c)) throw Supercritical("equilibrium velocity reaches the wave speed");
    SaintVenantDerived d;
    d.s_b = p.c_f * p.v_star * p.v_star / (p.g * p.h_star);
    d.lambda1 = p.v_star + c;
    d.lambda2 = p.v_star - c;
    const double pref = p.c_f * p.v_star * p.v_star / p.h_star;
    d.gamma = pref * (1.0 / p.v_star - 1.0 / (2.0 * c));
    d.delta = pref * (1.0 / p.v_star + 1.0 / (2.0 * c));
    d.d1 = std::sqrt(d.gamma * d.lambda1);
    d.d2 = std::sqrt(d.delta * -d.lambda2);
    return d;
}

std::pair<HyperbolicSystem, BoundaryControl> saint_venant(const SaintVenantParams& p) {
    saint_venant_derived(p); // validates the regime
    if (!(p.length > 0.0)) throw InvalidValue("length must be positive");
    check_mask(p.observable_0, "x=0");
    check_mask(p.observable_l, "x=L");
    const double H = p.h_star, V = p.v_star;
    HyperbolicSystem sys;
    sys.n = 2;
    sys.flux = Matrix{{V, H}, {p.g, V}};
    sys.source = Matrix{{0.0, 0.0}, {-p.c_f * V * V / (H * H), 2.0 * p.c_f * V / H}};
    sys.length = p.length;
    BoundaryControl bc;
    bc.a_phys = Matrix{{V, H}, {0.0, 0.0}};
    bc.b_phys = Matrix{{0.0, 0.0}, {V, H}};
    bc.k0 = Matrix{{p.k0_11, p.k0_12}, {0.0, 0.0}};
    bc.kl = Matrix{{0.0, 0.0}, {p.kl_21, p.kl_22}};
    bc.observable_0 = p.observable_0;
    bc.observable_l = p.observable_l;
    return {std::move(sys), enforce_observability(bc)};
}

double saint_venant_condition(const SaintVenantParams& p) {
    const SaintVenantDerived d = saint_venant_derived(p);
    const double w = std::sqrt(p.h_star / p.g);
    const double x0 = (p.v_star - p.k0_11) * w;
    const double y0 = p.h_star - p.k0_12;
    const double xl = (p.v_star - p.kl_21) * w;
    const double yl = p.h_star - p.kl_22;
    const double left =
        d.d1 / d.d2 *
        std::abs(guarded_div(x0 - y0, x0 + y0, "x=0 gains cancel the outgoing wave"));
    const double right =
        d.d2 / d.d1 *
        std::abs(guarded_div(xl + yl, xl - yl, "x=L gains cancel the outgoing wave"));
    return std::max(left, right);
}

std::vector<ControlInterval> saint_venant_ranges(const SaintVenantParams& p, ControlKey fixed,
                                                 double value) {
    const SaintVenantDerived d = saint_venant_derived(p);
    const double q = (d.d1 - d.d2) / (d.d1 + d.d2);
    const double w = std::sqrt(p.h_star / p.g);
    const double H = p.h_star, V = p.v_star;

    // cap is the admissible upper bound for the partner control; reach is the
    // fixed control's distance to its own cap, scaled into partner units
    double cap = 0.0, reach = 0.0;
    bool left_boundary = false;
    switch (fixed) {
        case ControlKey::kl_21:
        case ControlKey::k0_11:
            if (!(value >= 0.0) || !(value < V))
                throw InvalidValue("fixed velocity gain outside [0, v_star)");
            cap = H;
            reach = (V - value) * w;
            left_boundary = fixed == ControlKey::k0_11;
            break;
        case ControlKey::kl_22:
        case ControlKey::k0_12:
            if (!(value >= 0.0) || !(value < H))
                throw InvalidValue("fixed depth gain outside [0, h_star)");
            cap = V;
            reach = (H - value) / w;
            left_boundary = fixed == ControlKey::k0_12;
            break;
    }

    std::vector<ControlInterval> out;
    auto clamp_admit = [&](double lo, bool lo_sharp, double hi, bool hi_sharp) {
        if (lo < 0.0) {
            lo = 0.0;
            lo_sharp = false;
        }
        if (hi > cap) {
            hi = cap;
            hi_sharp = false;
        }
        if (lo < hi) out.push_back({lo, hi, lo_sharp, hi_sharp});
    };

    if (left_boundary) {
        // two-sided: the condition holds strictly between the two crossings
        clamp_admit(cap - reach / q, true, cap - q * reach, true);
        if (out.empty()) throw EmptyRange("no partner gain closes the x=0 condition");
    } else {
        // one-sided: the condition holds outside the crossings, near the cap
        // or (when reachable) near zero
        clamp_admit(cap - q * reach, true, cap, false);
        clamp_admit(0.0, false, cap - reach / q, true);
        if (out.empty()) throw EmptyRange("no partner gain closes the x=L condition");
    }
    return out;
}

} // namespace hypstab
