#pragma once

#include <optional>
#include <vector>

#include "hypstab/boundary.hpp"
#include "hypstab/matrix.hpp"
#include "hypstab/riemann.hpp"

namespace hypstab {

// Initial data for one physical variable: c + a * sin(f * pi * x).
struct VariableProfile {
    double constant = 0.0;
    double amplitude = 0.0;
    double frequency = 1.0;
};

struct SimConfig {
    double dx = 0.01;
    double cfl_factor = 0.75; // dt = cfl_factor * dx / max|lambda|
    double t_end = 10.0;
    int sample_stride = 1; // record every k-th step (t = 0 and the end always)
    std::vector<VariableProfile> initial; // one per physical variable
    std::vector<double> equilibrium;      // Y*, one per physical variable
    // Wrap-around closure instead of the boundary coupling; grid-convergence
    // checks only.
    bool periodic = false;
};

struct DecayFit {
    double nu = 0.0;      // fitted exponential rate, per time unit
    double c_decay = 0.0; // fitted prefactor relative to the initial norm
    double t_a = 0.0, t_b = 0.0;
    double residual = 0.0; // RMS of the fit in log space
};

struct SimResult {
    std::vector<double> times;
    std::vector<double> norms; // discrete L2 deviation from equilibrium, physical variables
    Matrix final_state;        // rows are physical variables, columns are cells
    std::optional<DecayFit> decay;
    bool blew_up = false; // some |state entry| exceeded 1e12; result truncated
};

// First-order upwind integration of d/dt R + Lambda d/dx R + S R = 0 on cell
// centers (j + 1/2) dx, closed each step by the boundary coupling
// (R+(0); R-(L)) = K (R+(L); R-(0)) written to ghost cells.
SimResult run(const RiemannForm& rf, const CouplingMatrix& k, const SimConfig& cfg);

// Least-squares line through (t, ln norm) over samples with t in [t_a, t_b]
// and norm > 1e-14; needs at least 5 of them.
DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& norms,
                   double t_a, double t_b);

} // namespace hypstab
