#ifndef CHSYS_TRANSFORM_HPP
#define CHSYS_TRANSFORM_HPP

#include <string>

#include "chsys/core_state.hpp"
#include "chsys/state.hpp"

namespace chsys {

struct TransformOptions {
    // Nodes with yxi <= plateau_eps are treated as part of a plateau of y
    // (an atom of the pushforward measure).
    double plateau_eps = 1e-8;
    // Compatibility tolerance for freshly transformed states.
    double tol_G = kTolG;
    // Safety bound on the compatibility defect of resampled states.
    // Piecewise-linear interpolation keeps the identity to O(dxi^2) on
    // smooth data but concentrates O(1) defects in cells where a field
    // jumps across one cell (a peakon crest), so this guards against
    // corruption only; quantitative checks live in the diagnostics.
    double resample_tol = 0.5;
    // Allowed slack when checking grid coverage.
    double coverage_slack = 1e-9;
    // Extra shortfall tolerated by the inverse transform: the boundary
    // labels drift by about |u(boundary)| * t during evolution, so the
    // image of y can fall short of the x grid by a whisker. Values in the
    // gap use the constant extension.
    double boundary_slack = 1e-3;
    // Max spread of U over a plateau accepted by the inverse transform.
    double plateau_spread_tol = kTolG;
};

// Eulerian -> Lagrangian (the measure-aware change of variables). The label
// grid must cover [x_lo, x_hi + mu(R)]. y inverts x + mu((-inf,x)) exactly
// (piecewise linear plus jumps); each atom becomes a plateau of y of width
// equal to its mass, on which yxi = 0 and h = 1.
LagrangianState to_lagrangian(const EulerianState& state, const GridSpec& xi_grid,
                              const TransformOptions& opts = {});

// Convenience: label grid [x_lo, x_hi + mass] with spacing close to the
// x-grid's, or with a prescribed node count when m > 0.
GridSpec default_xi_grid(const EulerianState& state, std::size_t m = 0);

// Lagrangian -> Eulerian (pushforward). u comes from monotone inversion of
// y; the energy density is (h/yxi) o y^{-1} off plateaus; maximal runs of
// plateau nodes are aggregated into atoms carrying the integral of h over
// the run.
EulerianState from_lagrangian(const LagrangianState& X, const GridSpec& x_grid,
                              const TransformOptions& opts = {});

// Normalization onto the section y + H = id: resamples X through the
// inverse of v = y + H. Errors if v is not strictly increasing.
LagrangianState gamma_relabel(const LagrangianState& X, const TransformOptions& opts = {});

struct RelabelingReport {
    bool member = false;
    double min_fxi = 0.0;
    double max_fxi = 0.0;
    double sup_dist = 0.0;          // sup |f - id|
    double inv_sup_dist = 0.0;      // sup |f^{-1} - id|
    double sup_slope_dev = 0.0;     // sup |f_xi - 1|
    double inv_sup_slope_dev = 0.0; // sup |(f^{-1})_xi - 1|
    double boundary_decay = 0.0;    // |f_xi - 1| at the ends
    double kappa = 0.0;             // measured group bound
    std::string reason;
};

// Membership test for the relabeling group: f strictly increasing, f - id
// bounded (within kappa_bound when >= 0), slopes bounded away from 0 and
// infinity, f_xi - 1 decaying at the truncation boundary. The measured kappa
// satisfies min f_xi >= 1/(1 + kappa).
RelabelingReport check_relabeling(const RelabelingMap& f, double kappa_bound = -1.0,
                                  const TransformOptions& opts = {});

// Group action X o f = (y o f, U o f, h o f f_xi, r o f f_xi); the derived
// fields yxi, Uxi pick up f_xi by the chain rule. Throws if f fails the
// membership test.
LagrangianState apply_relabeling(const LagrangianState& X, const RelabelingMap& f,
                                 const TransformOptions& opts = {});

// Distance between Eulerian states measured through the Lagrangian
// transform: E-norm of the difference of the two images plus |c_a - c_b|
// and |k_a - k_b|. A pseudometric on the sampled representation.
double d_distance(const EulerianState& a, const EulerianState& b,
                  const TransformOptions& opts = {});

} // namespace chsys

#endif
