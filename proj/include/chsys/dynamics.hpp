#ifndef CHSYS_DYNAMICS_HPP
#define CHSYS_DYNAMICS_HPP

#include <functional>
#include <vector>

#include "chsys/state.hpp"

namespace chsys {

// Nonlocal source terms on the label grid of the associated state.
struct PQField {
    std::vector<double> P;
    std::vector<double> Q;
};

struct DynamicsOptions {
    // Largest admissible decrease of y between neighbor nodes before the
    // kernel scan refuses the state; smaller negatives are clamped to zero.
    // Wave breaking legitimately folds the sampled y over by up to ~1e-5
    // (resolution-dependent), so this is a structural guard, not tol_G.
    double y_decrease_tol = 1e-4;
};

// Assembles P and Q by two O(N) exponential scans with trapezoid weights.
// The recursions only ever form e^{-(y_{i+1}-y_i)} <= 1, so no large
// exponentials appear. Requires y nondecreasing (up to the option above).
PQField assemble_pq(const LagrangianState& X, const DynamicsOptions& opts = {});

// Time derivative of all evolved per-node fields; c and k do not evolve.
struct StateDerivative {
    std::vector<double> zeta;
    std::vector<double> Ubar;
    std::vector<double> yxi;
    std::vector<double> Uxi;
    std::vector<double> h;
    std::vector<double> rbar;
};

StateDerivative rhs_eval(const LagrangianState& X, const DynamicsOptions& opts = {});
StateDerivative rhs_eval(const LagrangianState& X, const PQField& pq);

// X + a * D with t advanced by a; c and k copied bitwise.
LagrangianState advanced(const LagrangianState& X, const StateDerivative& D, double a);

// Classical fixed-step 4-stage Runge-Kutta. The compatibility residual of
// the output is monitored by callers, never projected away.
LagrangianState rk4_step(const LagrangianState& X, double dt, const DynamicsOptions& opts = {});

using Observer = std::function<void(const LagrangianState&)>;

// Integrates to time T with fixed step dt (the final step is shortened to
// land exactly on T). Observers run after every accepted step and once on
// the initial state. Returns the state at each requested snapshot time
// (times are reached exactly by shortening the step before them).
std::vector<LagrangianState> evolve(const LagrangianState& X0, double T, double dt,
                                    const std::vector<double>& snapshot_times,
                                    const std::vector<Observer>& observers = {},
                                    const DynamicsOptions& opts = {});

} // namespace chsys

#endif
