#ifndef CHSYS_DIAGNOSTICS_HPP
#define CHSYS_DIAGNOSTICS_HPP

#include <vector>

#include "chsys/dynamics.hpp"
#include "chsys/report.hpp"
#include "chsys/state.hpp"

namespace chsys {

// All residuals of a Lagrangian state relative to the initial state of its
// trajectory: compatibility defect |yxi h - Uxi^2 - rbar^2|, negativity of
// yxi and h, drift of r = rbar + k*yxi, central-difference defects of the
// P/Q derivative identities, and monotonicity of y + H.
ResidualReport invariant_residuals(const LagrangianState& X, const LagrangianState& X0);

// Conserved energy in label variables: trapezoid of U^2 yxi + h. Requires
// c = 0 (the integrand does not decay otherwise).
double energy_lagrangian(const LagrangianState& X);

// int Ubar^2 yxi dxi + ||h||_L1; exposed as an optional growth observer.
double gronwall_functional(const LagrangianState& X);

// Per-snapshot minima over a fixed label strip [xi0, xi1] located on the
// initial state by bisection of the monotone initial y (ties resolved
// toward the larger interval). Also reports the density-implied lower bound
// c1^2 / sup(h + 2|k||rbar| + k^2 yxi) for comparison.
struct RegularitySeries {
    std::size_t i0 = 0; // label index of xi0
    std::size_t i1 = 0; // label index of xi1
    double c1_sq = 0.0; // min of r^2 over the strip at t = 0
    std::vector<double> t;
    std::vector<double> min_yxi;
    std::vector<double> min_r;
    std::vector<double> implied_floor;
};

RegularitySeries regularity_monitor(const std::vector<LagrangianState>& trajectory,
                                    double x0, double x1);

// Max nodal |u_a - u_b| on a shared x-grid.
double sup_distance(const EulerianState& a, const EulerianState& b);

} // namespace chsys

#endif
