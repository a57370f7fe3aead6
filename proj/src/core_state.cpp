#include "chsys/core_state.hpp"

#include <cmath>
#include <sstream>

#include "chsys/errors.hpp"
#include "chsys/numerics.hpp"

namespace chsys {

ResidualReport validate_eulerian(const EulerianState& state, double tol) {
    state.grid.validate();
    if (state.u.size() != state.grid.n || state.rho.size() != state.grid.n)
        throw MalformedStateError("EulerianState: field size mismatch");
    if (!all_finite(state.u) || !all_finite(state.rho) || !std::isfinite(state.c) || !std::isfinite(state.k))
        throw MalformedStateError("EulerianState: non-finite field values");
    state.mu.validate();
    if (!(state.mu.grid == state.grid))
        throw MalformedStateError("EulerianState: mu lives on a different grid");

    ResidualReport rep;
    const std::size_t n = state.grid.n;
    const double dx = state.grid.dx();

    double bc = std::abs(state.u.front());
    bc = std::max(bc, std::abs(state.u.back() - state.c));
    bc = std::max(bc, std::abs(state.rho.front() - state.k));
    bc = std::max(bc, std::abs(state.rho.back() - state.k));
    rep.set("boundary", bc);

    // Compatibility of the a.c. part: skip nodes within one cell of an atom.
    std::vector<double> ux = central_diff(state.u, dx);
    double compat = 0.0;
    std::ptrdiff_t arg = -1;
    for (std::size_t i = 0; i < n; ++i) {
        double x = state.grid.node(i);
        bool near_atom = false;
        for (const auto& a : state.mu.atoms)
            if (std::abs(x - a.pos) <= dx) { near_atom = true; break; }
        if (near_atom) continue;
        double rb = state.rho[i] - state.k;
        double defect = std::abs(state.mu.density[i] - (ux[i] * ux[i] + rb * rb));
        if (defect > compat) { compat = defect; arg = static_cast<std::ptrdiff_t>(i); }
    }
    rep.set("compatibility", compat, arg);
    rep.set("total_mass", state.mu.total_mass());

    rep.valid = bc <= tol && compat <= tol;
    return rep;
}

CanonicalizeResult canonicalize(const GridSpec& grid,
                                const std::vector<double>& u,
                                const std::vector<double>& rho,
                                double kappa, double eta, double u_minus_inf,
                                const std::vector<RadonMeasure::Atom>& atoms,
                                double kappa_tol) {
    grid.validate();
    if (u.size() != grid.n || rho.size() != grid.n)
        throw MalformedStateError("canonicalize: sample size mismatch");
    if (!(eta > 0.0)) throw ConfigError("canonicalize: eta must be positive");

    const double alpha = -u_minus_inf;
    const double kappa_prime = kappa - 2.0 * alpha;
    if (std::abs(kappa_prime) > kappa_tol) {
        std::ostringstream os;
        os << "canonicalize: kappa' = " << kappa_prime
           << " is nonzero; only kappa' = 0 is supported";
        throw UnsupportedError(os.str());
    }

    CanonicalizeResult res;
    res.alpha = alpha;
    res.kappa_prime = kappa_prime;

    EulerianState s;
    s.grid = grid;
    s.u = u;
    s.rho = rho;
    const double sq = std::sqrt(eta);
    for (double& v : s.u) v += alpha;
    for (double& v : s.rho) v *= sq;
    s.c = s.u.back();
    s.k = 0.5 * (s.rho.front() + s.rho.back());

    s.mu.grid = grid;
    s.mu.atoms = atoms;
    std::vector<double> ux = central_diff(s.u, grid.dx());
    s.mu.density.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        double rb = s.rho[i] - s.k;
        s.mu.density[i] = ux[i] * ux[i] + rb * rb;
    }
    res.state = std::move(s);
    return res;
}

double total_energy_eulerian(const EulerianState& state) {
    if (state.c != 0.0)
        throw UnsupportedError("total_energy_eulerian: diverges for c != 0");
    std::vector<double> f(state.grid.n);
    for (std::size_t i = 0; i < state.grid.n; ++i)
        f[i] = state.u[i] * state.u[i] + state.mu.density[i];
    return trapz(f, state.grid.dx()) + state.mu.atom_mass();
}

} // namespace chsys
