#ifndef CHSYS_SCENARIO_HPP
#define CHSYS_SCENARIO_HPP

#include <string>
#include <vector>

#include "chsys/state.hpp"

namespace chsys {

// Run configuration. File format: one `key = value` per line, `#` comments.
// CLI flags override file values.
struct ScenarioConfig {
    std::string scenario = "single_peakon";
    std::string mode = "single"; // "single" or "vanishing"

    double x_lo = -20.0;
    double x_hi = 20.0;
    std::size_t x_n = 2001;

    // Label grid; xi_n = 0 derives the node count from the x spacing, and
    // the span defaults to [x_lo, x_hi + mu(R)].
    std::size_t xi_n = 0;

    double dt = 1e-3;
    double t_max = 1.0;
    std::vector<double> output_times = {0.0, 1.0};

    // Scenario parameters.
    double amplitude = 1.0;   // peakon amplitude a
    double position = 0.0;    // peakon center (pair: centers at -/+ position)
    double background_k = 0.0; // rho asymptote
    double dam_height = 1.0;  // dambreak hump height above k
    double dam_halfwidth = 4.0;
    double dam_smoothing = 2.0;
    double atom_pos = 0.0;
    double atom_mass = 1.0;

    // Vanishing-density study: constant backgrounds compared against the
    // rho = 0 baseline.
    std::vector<double> density_floors = {0.4, 0.2, 0.1, 0.05};

    // Frame parameters fed to canonicalize.
    double kappa = 0.0;
    double eta = 1.0;
    double u_minus_inf = 0.0;

    // Tolerance overrides.
    double tol_bc = 1e-6;
    double tol_G = 1e-9;
    double g_defect_bound = 1e-6; // hard invariant bound (exit code 4)

    void validate() const;
};

// Parses a config file; unknown keys are rejected.
ScenarioConfig parse_config_file(const std::string& path);
void apply_key_value(ScenarioConfig& cfg, const std::string& key, const std::string& value);

// Preset initial data. All presets satisfy the measure compatibility
// condition by construction (density built from the same discrete
// derivative the validator uses).
EulerianState build_scenario(const ScenarioConfig& cfg);

} // namespace chsys

#endif
