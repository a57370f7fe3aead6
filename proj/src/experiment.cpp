#include "chsys/experiment.hpp"

#include <cmath>
#include <limits>

#include "chsys/core_state.hpp"
#include "chsys/diagnostics.hpp"
#include "chsys/dynamics.hpp"
#include "chsys/errors.hpp"
#include "chsys/transform.hpp"

namespace chsys {

RunResult run_experiment(const ScenarioConfig& cfg) {
    cfg.validate();

    EulerianState raw = build_scenario(cfg);
    CanonicalizeResult canon = canonicalize(raw.grid, raw.u, raw.rho, cfg.kappa, cfg.eta,
                                            cfg.u_minus_inf, raw.mu.atoms);
    EulerianState init = std::move(canon.state);

    ResidualReport val = validate_eulerian(init, cfg.tol_bc);
    if (!val.valid)
        throw ConfigError("run_experiment: initial state fails validation: " + val.summary());

    const GridSpec xi = default_xi_grid(init, cfg.xi_n);
    TransformOptions topts;
    topts.tol_G = cfg.tol_G;
    LagrangianState X0 = to_lagrangian(init, xi, topts);

    RunResult result;
    result.x_grid = init.grid;
    result.worst.valid = true;

    bool invariant_ok = true;
    std::vector<StepSample> samples;
    Observer sampler = [&](const LagrangianState& X) {
        ResidualReport rep = invariant_residuals(X, X0);
        StepSample s;
        s.t = X.t;
        s.energy = (X.c == 0.0) ? energy_lagrangian(X)
                                : std::numeric_limits<double>::quiet_NaN();
        s.g_defect = rep.get("g_defect");
        s.r_defect = rep.get("r_drift");
        s.pq_defect = std::max(rep.get("qxi_defect"), rep.get("pxi_defect"));
        double my = X.yxi[0];
        for (double v : X.yxi) my = std::min(my, v);
        s.min_yxi = my;
        samples.push_back(s);
        result.worst.merge_max(rep);
        if (s.g_defect > cfg.g_defect_bound) invariant_ok = false;
    };

    std::vector<LagrangianState> snaps =
        evolve(X0, cfg.t_max, cfg.dt, cfg.output_times, {sampler});

    for (std::size_t i = 0; i < snaps.size(); ++i) {
        const LagrangianState& X = snaps[i];
        EulerianState e = from_lagrangian(X, init.grid, topts);
        SnapshotRecord rec;
        rec.t = X.t;
        rec.u = std::move(e.u);
        rec.rho = std::move(e.rho);
        rec.mu_density = std::move(e.mu.density);
        rec.atoms = std::move(e.mu.atoms);
        rec.energy = (X.c == 0.0) ? energy_lagrangian(X)
                                  : std::numeric_limits<double>::quiet_NaN();
        ResidualReport rep = invariant_residuals(X, X0);
        rec.g_defect = rep.get("g_defect");
        double my = X.yxi[0];
        for (double v : X.yxi) my = std::min(my, v);
        rec.min_yxi = my;
        result.snapshots.push_back(std::move(rec));
    }

    result.samples = std::move(samples);
    result.invariant_ok = invariant_ok;
    return result;
}

VanishingResult run_vanishing_study(const ScenarioConfig& cfg) {
    cfg.validate();
    if (cfg.output_times.empty() || std::abs(cfg.output_times.back() - cfg.t_max) > 1e-12)
        throw ConfigError("vanishing study: the last output time must equal t_max");

    ScenarioConfig base = cfg;
    base.mode = "single";
    base.background_k = 0.0;

    VanishingResult out;
    out.baseline = run_experiment(base);
    const std::vector<double>& u0 = out.baseline.snapshots.back().u;

    for (double kn : cfg.density_floors) {
        ScenarioConfig c = base;
        c.background_k = kn;
        RunResult r = run_experiment(c);
        const std::vector<double>& un = r.snapshots.back().u;
        double d = 0.0;
        for (std::size_t i = 0; i < un.size(); ++i)
            d = std::max(d, std::abs(un[i] - u0[i]));
        out.rows.push_back({kn, d});
    }
    return out;
}

} // namespace chsys
