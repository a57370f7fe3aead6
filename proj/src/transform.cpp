#include "chsys/transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chsys/errors.hpp"
#include "chsys/kernels.hpp"
#include "chsys/numerics.hpp"

namespace chsys {

namespace {

// Exact model of G(x) = x + mu((-inf, x)) for a piecewise-linear density
// with point atoms: G is piecewise quadratic between breakpoints and jumps
// by the atom mass at each atom. Segments invert in closed form (a stable
// quadratic solve), so no iterative root finding is involved and plateau
// widths equal atom masses exactly.
struct MassMap {
    std::vector<double> xs; // breakpoints (grid nodes and atom positions)
    std::vector<double> gl; // G just left of the breakpoint
    std::vector<double> gr; // G just right (gl + atom mass if an atom sits here)
    std::vector<double> ds; // density value at the breakpoint

    static MassMap build(const RadonMeasure& mu) {
        MassMap m;
        const GridSpec& g = mu.grid;
        m.xs.reserve(g.n + mu.atoms.size());
        m.gl.reserve(m.xs.capacity());
        m.gr.reserve(m.xs.capacity());
        m.ds.reserve(m.xs.capacity());

        std::size_t ia = 0;
        double G = g.lo; // G(x_lo) with no mass to the left of the truncation
        auto push = [&m](double x, double left, double right, double dens) {
            m.xs.push_back(x);
            m.gl.push_back(left);
            m.gr.push_back(right);
            m.ds.push_back(dens);
        };
        // int (1 + density) over [pa, pa+s] inside a cell with density
        // gradient grad and density da at pa
        auto increment = [](double da, double grad, double s) {
            return (1.0 + da) * s + 0.5 * grad * s * s;
        };
        {
            double jump = 0.0;
            while (ia < mu.atoms.size() && mu.atoms[ia].pos <= g.lo) jump += mu.atoms[ia++].mass;
            push(g.lo, G, G + jump, mu.density[0]);
            G += jump;
        }
        for (std::size_t i = 0; i + 1 < g.n; ++i) {
            const double xl = g.node(i);
            const double xr = (i + 2 == g.n) ? g.hi : g.node(i + 1);
            const double grad = (mu.density[i + 1] - mu.density[i]) / (xr - xl);
            double xprev = xl;
            double dprev = mu.density[i];
            while (ia < mu.atoms.size() && mu.atoms[ia].pos < xr) {
                const auto& a = mu.atoms[ia++];
                double dat = dprev + grad * (a.pos - xprev);
                double left = G + increment(dprev, grad, a.pos - xprev);
                push(a.pos, left, left + a.mass, dat);
                G = left + a.mass;
                xprev = a.pos;
                dprev = dat;
            }
            double left = G + increment(dprev, grad, xr - xprev);
            double jump = 0.0;
            if (i + 2 == g.n)
                while (ia < mu.atoms.size()) jump += mu.atoms[ia++].mass;
            else if (ia < mu.atoms.size() && mu.atoms[ia].pos == xr)
                jump = mu.atoms[ia++].mass;
            push(xr, left, left + jump, mu.density[i + 1]);
            G = left + jump;
        }
        return m;
    }

    double top() const { return gr.back(); }

    // Generalized inverse y(xi) = sup{x : G(x) < xi}; *plateau is set when
    // xi falls strictly inside a jump.
    double invert(double xi, bool* plateau) const {
        *plateau = false;
        if (xi <= gl.front()) return xs.front() - (gl.front() - xi);
        if (xi >= gr.back()) return xs.back() + (xi - gr.back());
        // first breakpoint whose right limit reaches xi
        std::size_t j = static_cast<std::size_t>(
            std::lower_bound(gr.begin(), gr.end(), xi) - gr.begin());
        if (xi > gl[j]) {
            if (xi < gr[j]) *plateau = true;
            return xs[j];
        }
        // xi lies on the quadratic segment from breakpoint j-1 to j:
        // solve a s^2 + b s = R with b >= 1; the discriminant stays in
        // [(1+d_l)^2, (1+d_r)^2], so the formula below never cancels
        const double seg = xs[j] - xs[j - 1];
        if (seg <= 0.0) return xs[j];
        const double R = xi - gr[j - 1];
        const double a = 0.5 * (ds[j] - ds[j - 1]) / seg;
        const double b = 1.0 + ds[j - 1];
        const double s = 2.0 * R / (b + std::sqrt(b * b + 4.0 * a * R));
        return xs[j - 1] + std::min(s, seg);
    }
};

void check_structure(const LagrangianState& X) {
    X.grid.validate();
    const std::size_t n = X.grid.n;
    if (X.zeta.size() != n || X.Ubar.size() != n || X.yxi.size() != n ||
        X.Uxi.size() != n || X.h.size() != n || X.rbar.size() != n)
        throw MalformedStateError("LagrangianState: field size mismatch");
    if (!X.finite() || !std::isfinite(X.c) || !std::isfinite(X.k))
        throw MalformedStateError("LagrangianState: non-finite field values");
}

void check_structure(const EulerianState& s) {
    s.grid.validate();
    if (s.u.size() != s.grid.n || s.rho.size() != s.grid.n)
        throw MalformedStateError("EulerianState: field size mismatch");
    if (!all_finite(s.u) || !all_finite(s.rho))
        throw MalformedStateError("EulerianState: non-finite field values");
    s.mu.validate();
    if (!(s.mu.grid == s.grid))
        throw MalformedStateError("EulerianState: mu lives on a different grid");
}

} // namespace

GridSpec default_xi_grid(const EulerianState& state, std::size_t m) {
    const double mass = state.mu.total_mass();
    GridSpec xi;
    xi.lo = state.grid.lo;
    xi.hi = state.grid.hi + mass;
    if (m > 0) {
        xi.n = m;
    } else {
        const double dx = state.grid.dx();
        xi.n = state.grid.n + static_cast<std::size_t>(std::ceil(mass / dx - 1e-12));
    }
    return xi;
}

LagrangianState to_lagrangian(const EulerianState& state, const GridSpec& xi_grid,
                              const TransformOptions& opts) {
    check_structure(state);
    xi_grid.validate();

    const double mass = state.mu.total_mass();
    const double slack = opts.coverage_slack * std::max(1.0, std::abs(state.grid.hi) + mass);
    if (xi_grid.lo > state.grid.lo + slack || xi_grid.hi < state.grid.hi + mass - slack) {
        std::ostringstream os;
        os << "to_lagrangian: label grid [" << xi_grid.lo << ", " << xi_grid.hi
           << "] does not cover [" << state.grid.lo << ", " << state.grid.hi + mass << "]";
        throw CoverageError(os.str());
    }

    const MassMap map = MassMap::build(state.mu);
    const std::vector<double> ux = central_diff(state.u, state.grid.dx());

    LagrangianState X;
    X.grid = xi_grid;
    X.c = state.c;
    X.k = state.k;
    const std::size_t n = xi_grid.n;
    X.zeta.resize(n);
    X.Ubar.resize(n);
    X.yxi.resize(n);
    X.Uxi.resize(n);
    X.h.resize(n);
    X.rbar.resize(n);

    const double xlo = state.grid.lo;
    const double dx = state.grid.dx();
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = xi_grid.node(i);
        bool plateau = false;
        double y = map.invert(xi, &plateau);
        X.zeta[i] = y - xi;

        const double uy = interp_uniform(xlo, dx, state.u, y);
        X.Ubar[i] = (X.c == 0.0) ? uy : uy - X.c * chi_eval(y).chi;

        if (plateau) {
            X.yxi[i] = 0.0;
            X.h[i] = 1.0;
            X.Uxi[i] = 0.0;
            X.rbar[i] = 0.0;
        } else {
            const double uxy = interp_uniform(xlo, dx, ux, y);
            const double rby = interp_uniform(xlo, dx, state.rho, y) - X.k;
            const double yxi = 1.0 / (1.0 + uxy * uxy + rby * rby);
            X.yxi[i] = yxi;
            X.h[i] = 1.0 - yxi;
            X.Uxi[i] = uxy * yxi;
            X.rbar[i] = rby * yxi;
        }
    }
    return X;
}

EulerianState from_lagrangian(const LagrangianState& X, const GridSpec& x_grid,
                              const TransformOptions& opts) {
    check_structure(X);
    x_grid.validate();

    const std::size_t n = X.grid.n;
    const double dxi = X.grid.dx();
    std::vector<double> y = X.y_nodes();
    // monotonized copy for searching; true decreases are the caller's
    // monitored residual, only roundoff is absorbed here
    std::vector<double> ym(y);
    for (std::size_t i = 1; i < n; ++i) ym[i] = std::max(ym[i], ym[i - 1]);

    const double slack =
        std::max(opts.coverage_slack * std::max(1.0, std::abs(x_grid.hi)), opts.boundary_slack);
    if (ym.front() > x_grid.lo + slack || ym.back() < x_grid.hi - slack) {
        std::ostringstream os;
        os << "from_lagrangian: y range [" << ym.front() << ", " << ym.back()
           << "] does not cover the x grid [" << x_grid.lo << ", " << x_grid.hi << "]";
        throw CoverageError(os.str());
    }

    std::vector<bool> plateau(n);
    for (std::size_t i = 0; i < n; ++i) plateau[i] = X.yxi[i] <= opts.plateau_eps;

    const std::vector<double> U = X.U_nodes();

    EulerianState s;
    s.grid = x_grid;
    s.c = X.c;
    s.k = X.k;
    s.mu.grid = x_grid;
    s.mu.density.assign(x_grid.n, 0.0);
    s.u.resize(x_grid.n);
    s.rho.resize(x_grid.n);

    // Atoms: maximal runs of plateau nodes.
    double prev_pos = x_grid.lo - 1.0;
    for (std::size_t i = 0; i < n;) {
        if (!plateau[i]) { ++i; continue; }
        std::size_t a = i, b = i;
        while (b + 1 < n && plateau[b + 1]) ++b;
        double m = 0.0;
        for (std::size_t j = a; j < b; ++j) m += 0.5 * dxi * (X.h[j] + X.h[j + 1]);
        double umin = U[a], umax = U[a];
        for (std::size_t j = a; j <= b; ++j) {
            umin = std::min(umin, U[j]);
            umax = std::max(umax, U[j]);
        }
        if (umax - umin > opts.plateau_spread_tol) {
            std::ostringstream os;
            os << "from_lagrangian: U varies by " << umax - umin
               << " over the plateau at y = " << ym[a];
            throw InvariantError(os.str());
        }
        if (m > 0.0) {
            double pos = std::clamp(0.5 * (ym[a] + ym[b]), x_grid.lo, x_grid.hi);
            if (!s.mu.atoms.empty() && pos <= prev_pos)
                s.mu.atoms.back().mass += m; // merge unresolvable neighbors
            else
                s.mu.atoms.push_back({pos, m});
            prev_pos = s.mu.atoms.back().pos;
        }
        i = b + 1;
    }

    // Nodal density ratios off plateaus; plateau nodes borrow the nearest
    // off-plateau value so the a.c. part stays bounded at atom locations.
    std::vector<double> dens(n, 0.0), rhob(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!plateau[i]) {
            dens[i] = X.h[i] / X.yxi[i];
            rhob[i] = X.rbar[i] / X.yxi[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!plateau[i]) continue;
        std::size_t l = i, r = i;
        while (l > 0 && plateau[l]) --l;
        while (r + 1 < n && plateau[r]) ++r;
        std::size_t src = !plateau[l] ? l : r;
        if (plateau[src]) continue; // everything degenerate; keep zeros
        dens[i] = dens[src];
        rhob[i] = 0.0; // rbar = 0 on plateaus by the compatibility identity
    }

    for (std::size_t j = 0; j < x_grid.n; ++j) {
        const double x = std::clamp(x_grid.node(j), ym.front(), ym.back());
        const std::size_t i = locate_cell(ym, x);
        const double dy = ym[i + 1] - ym[i];
        const double th = dy > 0.0 ? std::clamp((x - ym[i]) / dy, 0.0, 1.0) : 0.0;
        s.u[j] = U[i] + th * (U[i + 1] - U[i]);
        s.mu.density[j] = std::max(0.0, dens[i] + th * (dens[i + 1] - dens[i]));
        s.rho[j] = s.k + rhob[i] + th * (rhob[i + 1] - rhob[i]);
    }
    return s;
}

namespace {

// Shared resampling core: X o f with all fields evaluated at f(xi) by
// piecewise-linear interpolation (slope-one extension of y, constant
// extension of the other fields) and the Jacobian factor on the derived and
// weighted fields.
LagrangianState compose(const LagrangianState& X, const std::vector<double>& f,
                        const std::vector<double>& fxi) {
    const std::size_t n = X.grid.n;
    const double lo = X.grid.lo;
    const double hi = X.grid.hi;
    const double dxi = X.grid.dx();
    const std::vector<double> y = X.y_nodes();
    const std::vector<double> U = X.U_nodes();

    LagrangianState R;
    R.grid = X.grid;
    R.c = X.c;
    R.k = X.k;
    R.t = X.t;
    R.zeta.resize(n);
    R.Ubar.resize(n);
    R.yxi.resize(n);
    R.Uxi.resize(n);
    R.h.resize(n);
    R.rbar.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const double p = f[i];
        double yp;
        if (p <= lo) yp = y.front() + (p - lo);
        else if (p >= hi) yp = y.back() + (p - hi);
        else yp = interp_uniform(lo, dxi, y, p);

        const double xi = X.grid.node(i);
        R.zeta[i] = yp - xi;
        double Up = interp_uniform(lo, dxi, U, p);
        R.Ubar[i] = (X.c == 0.0) ? Up : Up - X.c * chi_eval(yp).chi;
        R.yxi[i] = interp_uniform(lo, dxi, X.yxi, p) * fxi[i];
        R.Uxi[i] = interp_uniform(lo, dxi, X.Uxi, p) * fxi[i];
        R.h[i] = std::max(0.0, interp_uniform(lo, dxi, X.h, p) * fxi[i]);
        R.rbar[i] = interp_uniform(lo, dxi, X.rbar, p) * fxi[i];
    }
    return R;
}

double g_residual(const LagrangianState& X) {
    double m = 0.0;
    for (std::size_t i = 0; i < X.grid.n; ++i) {
        double r = X.yxi[i] * X.h[i] - X.Uxi[i] * X.Uxi[i] - X.rbar[i] * X.rbar[i];
        m = std::max(m, std::abs(r));
    }
    return m;
}

} // namespace

LagrangianState gamma_relabel(const LagrangianState& X, const TransformOptions& opts) {
    check_structure(X);
    const std::size_t n = X.grid.n;
    const double dxi = X.grid.dx();
    std::vector<double> v = X.y_nodes();
    {
        const std::vector<double> H = X.H_nodes();
        for (std::size_t i = 0; i < n; ++i) v[i] += H[i];
    }
    for (std::size_t i = 1; i < n; ++i)
        if (!(v[i] > v[i - 1]))
            throw InvariantError("gamma_relabel: y + H is not strictly increasing");

    std::vector<double> f(n), fxi(n);
    const std::vector<double> xi = X.grid.nodes();
    for (std::size_t i = 0; i < n; ++i) {
        const double target = xi[i];
        if (target <= v.front()) {
            f[i] = xi.front() + (target - v.front());
            fxi[i] = 1.0;
        } else if (target >= v.back()) {
            f[i] = xi.back() + (target - v.back());
            fxi[i] = 1.0;
        } else {
            std::size_t j = locate_cell(v, target);
            double slope = (v[j + 1] - v[j]) / dxi;
            f[i] = xi[j] + (target - v[j]) / slope;
            fxi[i] = 1.0 / slope;
        }
    }
    LagrangianState R = compose(X, f, fxi);

    // The output is the canonical slice representative: verify y + H = id.
    std::vector<double> w = R.y_nodes();
    const std::vector<double> H = R.H_nodes();
    double defect = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        defect = std::max(defect, std::abs(w[i] + H[i] - xi[i]));
    if (defect > opts.resample_tol) {
        std::ostringstream os;
        os << "gamma_relabel: y + H deviates from id by " << defect;
        throw InvariantError(os.str());
    }
    return R;
}

RelabelingReport check_relabeling(const RelabelingMap& f, double kappa_bound,
                                  const TransformOptions& opts) {
    (void)opts;
    RelabelingReport rep;
    f.grid.validate();
    const std::size_t n = f.grid.n;
    if (f.f.size() != n || f.fxi.size() != n) {
        rep.reason = "size mismatch";
        return rep;
    }
    if (!all_finite(f.f) || !all_finite(f.fxi)) {
        rep.reason = "non-finite values";
        return rep;
    }
    for (std::size_t i = 1; i < n; ++i)
        if (!(f.f[i] > f.f[i - 1])) {
            rep.reason = "f is not strictly increasing";
            return rep;
        }

    rep.min_fxi = f.fxi.front();
    rep.max_fxi = f.fxi.front();
    for (double v : f.fxi) {
        rep.min_fxi = std::min(rep.min_fxi, v);
        rep.max_fxi = std::max(rep.max_fxi, v);
    }
    if (!(rep.min_fxi > 0.0)) {
        rep.reason = "f_xi is not strictly positive";
        return rep;
    }

    for (std::size_t i = 0; i < n; ++i) {
        rep.sup_dist = std::max(rep.sup_dist, std::abs(f.f[i] - f.grid.node(i)));
        rep.sup_slope_dev = std::max(rep.sup_slope_dev, std::abs(f.fxi[i] - 1.0));
        rep.inv_sup_slope_dev = std::max(rep.inv_sup_slope_dev, std::abs(1.0 / f.fxi[i] - 1.0));
    }
    // For an increasing bijection, sup |f^{-1} - id| = sup |f - id|.
    rep.inv_sup_dist = rep.sup_dist;
    rep.boundary_decay = std::max(std::abs(f.fxi.front() - 1.0), std::abs(f.fxi.back() - 1.0));
    rep.kappa = std::max(rep.sup_dist, rep.sup_slope_dev) +
                std::max(rep.inv_sup_dist, rep.inv_sup_slope_dev);

    if (rep.boundary_decay > kTolBc) {
        rep.reason = "f_xi - 1 does not vanish at the truncation boundary";
        return rep;
    }
    if (kappa_bound >= 0.0 && rep.kappa > kappa_bound) {
        rep.reason = "kappa bound exceeded";
        return rep;
    }
    rep.member = true;
    return rep;
}

LagrangianState apply_relabeling(const LagrangianState& X, const RelabelingMap& f,
                                 const TransformOptions& opts) {
    check_structure(X);
    if (!(f.grid == X.grid))
        throw ConfigError("apply_relabeling: relabeling lives on a different grid");
    RelabelingReport rep = check_relabeling(f, -1.0, opts);
    if (!rep.member)
        throw InvariantError("apply_relabeling: invalid relabeling: " + rep.reason);

    LagrangianState R = compose(X, f.f, f.fxi);
    const double res = g_residual(R);
    if (res > opts.resample_tol) {
        std::ostringstream os;
        os << "apply_relabeling: compatibility residual " << res << " after composition";
        throw InvariantError(os.str());
    }
    return R;
}

double d_distance(const EulerianState& a, const EulerianState& b,
                  const TransformOptions& opts) {
    if (!(a.grid == b.grid)) throw ConfigError("d_distance: grid mismatch");
    const double mass = std::max(a.mu.total_mass(), b.mu.total_mass());
    GridSpec xi;
    xi.lo = a.grid.lo;
    xi.hi = a.grid.hi + mass;
    xi.n = a.grid.n + static_cast<std::size_t>(std::ceil(mass / a.grid.dx() - 1e-12));

    const LagrangianState Xa = to_lagrangian(a, xi, opts);
    const LagrangianState Xb = to_lagrangian(b, xi, opts);
    const std::size_t n = xi.n;
    const double dxi = xi.dx();

    auto ubar_xi = [](const LagrangianState& X) {
        std::vector<double> v(X.Uxi);
        if (X.c != 0.0)
            for (std::size_t i = 0; i < X.grid.n; ++i)
                v[i] -= X.c * chi_eval(X.y(i)).dchi * X.yxi[i];
        return v;
    };

    std::vector<double> dz(n), dzx(n), du(n), dux(n), dh(n), dr(n);
    const std::vector<double> ua = ubar_xi(Xa), ub = ubar_xi(Xb);
    for (std::size_t i = 0; i < n; ++i) {
        dz[i] = Xa.zeta[i] - Xb.zeta[i];
        dzx[i] = Xa.yxi[i] - Xb.yxi[i]; // zeta_xi = yxi - 1 nodewise
        du[i] = Xa.Ubar[i] - Xb.Ubar[i];
        dux[i] = ua[i] - ub[i];
        dh[i] = Xa.h[i] - Xb.h[i];
        dr[i] = Xa.rbar[i] - Xb.rbar[i];
    }
    return sup_norm(dz) + l2_norm(dzx, dxi) + l2_norm(du, dxi) + l2_norm(dux, dxi) +
           std::abs(a.c - b.c) + l2_norm(dh, dxi) + l2_norm(dr, dxi) + std::abs(a.k - b.k);
}

} // namespace chsys
