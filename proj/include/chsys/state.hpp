#ifndef CHSYS_STATE_HPP
#define CHSYS_STATE_HPP

#include <vector>

#include "chsys/grid.hpp"
#include "chsys/measure.hpp"
#include "chsys/numerics.hpp"

namespace chsys {

// Eulerian data (u, rho, mu) on a truncated x-grid. The velocity asymptotes
// are normalized so u -> 0 at -inf and u -> c at +inf; rho -> k at both ends.
// The absolutely continuous part of mu is tied to u_x^2 + (rho - k)^2.
struct EulerianState {
    GridSpec grid;
    std::vector<double> u;
    std::vector<double> rho;
    RadonMeasure mu;
    double c = 0.0;
    double k = 0.0;

    static EulerianState zero(const GridSpec& g) {
        EulerianState s;
        s.grid = g;
        s.u.assign(g.n, 0.0);
        s.rho.assign(g.n, 0.0);
        s.mu = RadonMeasure::zero(g);
        return s;
    }

    std::vector<double> rho_bar() const {
        std::vector<double> rb(rho);
        for (double& v : rb) v -= k;
        return rb;
    }
};

// Lagrangian data on a uniform label grid in xi. Evolved per-node unknowns
// are (zeta, Ubar, yxi, Uxi, h, rbar); yxi and Uxi are independent fields,
// not derivatives of the sampled y and U. Derived quantities:
//   y = zeta + xi, U = Ubar + c * chi(y), r = rbar + k * yxi,
//   H = cumulative trapezoid of h from grid.lo.
struct LagrangianState {
    GridSpec grid;
    std::vector<double> zeta;
    std::vector<double> Ubar;
    std::vector<double> yxi;
    std::vector<double> Uxi;
    std::vector<double> h;
    std::vector<double> rbar;
    double c = 0.0;
    double k = 0.0;
    double t = 0.0;

    static LagrangianState identity(const GridSpec& g) {
        LagrangianState s;
        s.grid = g;
        s.zeta.assign(g.n, 0.0);
        s.Ubar.assign(g.n, 0.0);
        s.yxi.assign(g.n, 1.0);
        s.Uxi.assign(g.n, 0.0);
        s.h.assign(g.n, 0.0);
        s.rbar.assign(g.n, 0.0);
        return s;
    }

    double y(std::size_t i) const { return zeta[i] + grid.node(i); }

    std::vector<double> y_nodes() const {
        std::vector<double> v(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i) v[i] = y(i);
        return v;
    }

    std::vector<double> U_nodes() const;   // Ubar + c * chi(y)
    std::vector<double> r_nodes() const {
        std::vector<double> v(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i) v[i] = rbar[i] + k * yxi[i];
        return v;
    }
    std::vector<double> H_nodes() const { return cumtrapz(h, grid.dx()); }

    bool finite() const {
        return all_finite(zeta) && all_finite(Ubar) && all_finite(yxi) &&
               all_finite(Uxi) && all_finite(h) && all_finite(rbar);
    }
};

// An orientation-preserving change of the label xi, sampled on a grid
// together with its derivative.
struct RelabelingMap {
    GridSpec grid;
    std::vector<double> f;
    std::vector<double> fxi;

    static RelabelingMap identity(const GridSpec& g) {
        RelabelingMap m;
        m.grid = g;
        m.f = g.nodes();
        m.fxi.assign(g.n, 1.0);
        return m;
    }
};

} // namespace chsys

#endif
