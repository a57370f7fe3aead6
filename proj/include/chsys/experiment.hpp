#ifndef CHSYS_EXPERIMENT_HPP
#define CHSYS_EXPERIMENT_HPP

#include <vector>

#include "chsys/report.hpp"
#include "chsys/scenario.hpp"

namespace chsys {

// Eulerian view of the solution at one output time plus scalar diagnostics.
struct SnapshotRecord {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> rho;
    std::vector<double> mu_density;
    std::vector<RadonMeasure::Atom> atoms;
    double energy = 0.0;
    double g_defect = 0.0;
    double min_yxi = 0.0;
};

// One row per accepted integrator step.
struct StepSample {
    double t = 0.0;
    double energy = 0.0;
    double g_defect = 0.0;
    double r_defect = 0.0;
    double min_yxi = 0.0;
    double pq_defect = 0.0;
};

struct RunResult {
    std::vector<SnapshotRecord> snapshots;
    std::vector<StepSample> samples;
    ResidualReport worst; // max over the whole run
    GridSpec x_grid;
    bool invariant_ok = true; // g-defect stayed below the configured bound
};

// Full pipeline: build -> validate -> canonicalize -> to_lagrangian ->
// evolve (with per-step observers) -> from_lagrangian at each output time.
// Deterministic: identical configs produce bitwise-identical outputs.
RunResult run_experiment(const ScenarioConfig& cfg);

// Vanishing-density study: evolves the same velocity data over each
// constant background in cfg.density_floors and compares against the
// rho = 0 baseline at t_max.
struct VanishingRow {
    double k_n = 0.0;
    double sup_dist = 0.0;
};

struct VanishingResult {
    RunResult baseline;
    std::vector<VanishingRow> rows;
};

VanishingResult run_vanishing_study(const ScenarioConfig& cfg);

} // namespace chsys

#endif
