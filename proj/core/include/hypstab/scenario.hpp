#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypstab/boundary.hpp"
#include "hypstab/matrix.hpp"
#include "hypstab/models.hpp"
#include "hypstab/riemann.hpp"
#include "hypstab/simulate.hpp"
#include "hypstab/stability.hpp"

namespace hypstab {

// Scenario text format: sectioned key-value lines.
//
//   [system]            first section in the file; `type` is its first key
//   [boundary]          controls and observability masks
//   [sim]               optional; required by the simulate command
//   [analysis]          optional; seed and search budgets
//
// Values are typed: strings quoted, numbers bare, booleans true/false,
// lists [a, b], matrices [[a, b], [c, d]]. Full-line # comments only.
// Unknown sections and keys are rejected, as are duplicates; which keys
// [system] and [boundary] accept depends on `type`. The grammar is spelled
// out in the README.

enum class SystemKind { density_flow, saint_venant, generic };

struct SimSection {
    double dx = 0.01;
    double cfl_factor = 0.75;
    double t_end = 10.0;
    int sample_stride = 1;
    // Initial data per physical variable: constant + amplitude sin(frequency pi x).
    // Empty constants mean rest at equilibrium; amplitude/frequency default to
    // 0/1 entrywise when their lists are omitted.
    std::vector<double> initial_constant;
    std::vector<double> initial_amplitude;
    std::vector<double> initial_frequency;
    std::vector<double> equilibrium; // empty: the model's own equilibrium
};

struct AnalysisSection {
    std::uint64_t seed = 0;
    int rho0_grid = 64;
    int rho0_starts = 200;
    int rho0_refine = 5;
    int rho1_starts = 20;
    int find_p_samples = 500;
    double verdict_band = 1e-6;
    int workers = 0; // sweep parallelism; 0 picks the hardware count
};

struct Scenario {
    SystemKind kind = SystemKind::density_flow;
    double length = 1.0;

    // density_flow
    double lambda1 = 1.0, lambda2 = 2.0;
    double h_star = 2.0, q_star = 3.0; // h_star shared with saint_venant

    // saint_venant
    double v_star = 3.0, g = 9.81, c_f = 0.1;

    // generic: flux m, optional source n, explicit boundary matrices
    std::optional<Matrix> m, n_source;
    std::optional<Matrix> a_phys, b_phys, k0, kl;

    // built-in controls
    double k0_11 = 0.0, k0_12 = 0.0, kl_21 = 0.0, kl_22 = 0.0;

    // empty: every variable observable at that end
    std::vector<bool> observable_0, observable_l;

    std::optional<SimSection> sim;
    AnalysisSection analysis;
};

// Throws ParseError with a 1-based line number on any lexical, schema or
// shape problem. Physical validity (positivity, subcriticality, spectrum)
// is left to realize().
Scenario parse_scenario(const std::string& text);

// Canonical form: fixed section and key order, defaults materialized,
// shortest round-trip number formatting. parse(serialize(sc)) is equivalent
// to sc, and serialization of equivalent scenarios is byte-identical.
std::string serialize_scenario(const Scenario& sc);

struct Realized {
    HyperbolicSystem system;
    BoundaryControl boundary;        // observability already applied
    std::vector<double> equilibrium; // model equilibrium; zeros for generic
};

Realized realize(const Scenario& sc);

// Built-in model parameters as written in the scenario; InvalidValue when
// the kind does not match.
DensityFlowParams density_flow_params(const Scenario& sc);
SaintVenantParams saint_venant_params(const Scenario& sc);

// Requires a [sim] section (InvalidValue otherwise). The realized model
// supplies the system size and the fallback equilibrium.
SimConfig sim_config(const Scenario& sc, const Realized& r);

// Search budgets with the effective seed already applied.
SearchConfig search_config(const Scenario& sc);

// analysis.seed unless the HYPSTAB_SEED environment variable is set.
std::uint64_t effective_seed(const Scenario& sc);

// Scalar control paths for sweeps: boundary.k0_11, boundary.k0_12,
// boundary.kl_21, boundary.kl_22 on the built-in models.
void set_parameter(Scenario& sc, const std::string& path, double value);

} // namespace hypstab
