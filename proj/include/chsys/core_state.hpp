#ifndef CHSYS_CORE_STATE_HPP
#define CHSYS_CORE_STATE_HPP

#include "chsys/report.hpp"
#include "chsys/state.hpp"

namespace chsys {

// Default tolerances. tol_G applies to the Lagrangian compatibility identity
// of a freshly transformed state; tol_bc to boundary/asymptote mismatches.
constexpr double kTolG = 1e-9;
constexpr double kTolBc = 1e-6;

// Checks an Eulerian state against its defining conditions: boundary values
// near the asymptotes, mu-density compatibility with u_x^2 + (rho-k)^2 away
// from atoms, finite total mass. Pure; the returned report is marked valid
// iff every residual is <= tol.
ResidualReport validate_eulerian(const EulerianState& state, double tol = kTolBc);

struct CanonicalizeResult {
    EulerianState state;
    double alpha = 0.0;
    double kappa_prime = 0.0;
};

// Normalizes raw (u, rho) samples to the solver's frame: shifts u by
// alpha = -u_minus_inf, scales rho by sqrt(eta), and reports
// kappa' = kappa - 2*alpha. Only kappa' = 0 is supported; atoms are carried
// through unchanged and the density part of mu is rebuilt from the
// transformed samples.
CanonicalizeResult canonicalize(const GridSpec& grid,
                                const std::vector<double>& u,
                                const std::vector<double>& rho,
                                double kappa, double eta, double u_minus_inf,
                                const std::vector<RadonMeasure::Atom>& atoms = {},
                                double kappa_tol = 1e-12);

// Total conserved energy: trapezoid of (u^2 + mu.density) plus atom masses.
// Defined only for c = 0 (the integral diverges otherwise).
double total_energy_eulerian(const EulerianState& state);

} // namespace chsys

#endif
