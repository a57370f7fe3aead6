#include "chsys/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chsys/errors.hpp"
#include "chsys/kernels.hpp"
#include "chsys/numerics.hpp"

namespace chsys {

namespace {

struct MaxTracker {
    double value = 0.0;
    std::ptrdiff_t index = -1;
    void feed(double v, std::size_t i) {
        if (v > value) {
            value = v;
            index = static_cast<std::ptrdiff_t>(i);
        }
    }
};

} // namespace

ResidualReport invariant_residuals(const LagrangianState& X, const LagrangianState& X0) {
    const std::size_t n = X.grid.n;
    const double dxi = X.grid.dx();
    ResidualReport rep;
    rep.t = X.t;
    if (!X.finite()) {
        rep.valid = false;
        rep.set("finite", std::numeric_limits<double>::infinity());
        return rep;
    }

    MaxTracker gdef, negy, negh, rdrift, mono;
    const std::vector<double> r = X.r_nodes();
    const std::vector<double> r0 = X0.r_nodes();
    const std::vector<double> y = X.y_nodes();
    const std::vector<double> H = X.H_nodes();
    for (std::size_t i = 0; i < n; ++i) {
        gdef.feed(std::abs(X.yxi[i] * X.h[i] - X.Uxi[i] * X.Uxi[i] - X.rbar[i] * X.rbar[i]), i);
        negy.feed(-X.yxi[i], i);
        negh.feed(-X.h[i], i);
        if (r0.size() == n) rdrift.feed(std::abs(r[i] - r0[i]), i);
        if (i + 1 < n) mono.feed((y[i] + H[i]) - (y[i + 1] + H[i + 1]), i);
    }

    // Derivative identities of the nonlocal terms, by central differences.
    const PQField pq = assemble_pq(X);
    const std::vector<double> U = X.U_nodes();
    const std::vector<double> zxi = central_diff(X.zeta, dxi);
    const double half_k2 = 0.5 * X.k * X.k;
    MaxTracker qdef, pdef;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double dQ = (pq.Q[i + 1] - pq.Q[i - 1]) / (2.0 * dxi);
        double rhsQ = -0.5 * X.h[i] - (U[i] * U[i] + half_k2 - pq.P[i]) * X.yxi[i] - X.k * X.rbar[i];
        qdef.feed(std::abs(dQ - rhsQ), i);
        double dP = (pq.P[i + 1] - pq.P[i - 1]) / (2.0 * dxi);
        pdef.feed(std::abs(dP - pq.Q[i] * (1.0 + zxi[i])), i);
    }

    rep.set("g_defect", gdef.value, gdef.index);
    rep.set("neg_yxi", std::max(0.0, negy.value), negy.index);
    rep.set("neg_h", std::max(0.0, negh.value), negh.index);
    rep.set("r_drift", rdrift.value, rdrift.index);
    rep.set("qxi_defect", qdef.value, qdef.index);
    rep.set("pxi_defect", pdef.value, pdef.index);
    rep.set("yH_monotone_defect", std::max(0.0, mono.value), mono.index);
    return rep;
}

double energy_lagrangian(const LagrangianState& X) {
    if (X.c != 0.0)
        throw UnsupportedError("energy_lagrangian: diverges for c != 0");
    std::vector<double> f(X.grid.n);
    for (std::size_t i = 0; i < X.grid.n; ++i)
        f[i] = X.Ubar[i] * X.Ubar[i] * X.yxi[i] + X.h[i];
    return trapz(f, X.grid.dx());
}

double gronwall_functional(const LagrangianState& X) {
    std::vector<double> f(X.grid.n);
    for (std::size_t i = 0; i < X.grid.n; ++i)
        f[i] = X.Ubar[i] * X.Ubar[i] * X.yxi[i] + std::abs(X.h[i]);
    return trapz(f, X.grid.dx());
}

RegularitySeries regularity_monitor(const std::vector<LagrangianState>& trajectory,
                                    double x0, double x1) {
    if (trajectory.empty()) throw ConfigError("regularity_monitor: empty trajectory");
    if (!(x0 < x1)) throw ConfigError("regularity_monitor: need x0 < x1");
    const LagrangianState& X0 = trajectory.front();
    const std::size_t n = X0.grid.n;
    const std::vector<double> y0 = X0.y_nodes();
    if (x0 < y0.front() || x1 > y0.back())
        throw CoverageError("regularity_monitor: region outside the range of y(0,.)");

    RegularitySeries out;
    // xi0 = sup{xi : y(0,xi) <= x0}: last node not past x0 (bisection on the
    // monotone initial y); xi1 = inf{xi : y(0,xi) >= x1}.
    {
        std::size_t lo = 0, hi = n - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi + 1) / 2;
            if (y0[mid] <= x0) lo = mid; else hi = mid - 1;
        }
        out.i0 = lo;
        lo = 0; hi = n - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (y0[mid] >= x1) hi = mid; else lo = mid + 1;
        }
        out.i1 = hi;
    }
    if (out.i1 < out.i0) std::swap(out.i0, out.i1);

    const std::vector<double> r0 = X0.r_nodes();
    double c1 = std::abs(r0[out.i0]);
    for (std::size_t i = out.i0; i <= out.i1; ++i) c1 = std::min(c1, std::abs(r0[i]));
    out.c1_sq = c1 * c1;

    const double ak = std::abs(X0.k);
    for (const LagrangianState& X : trajectory) {
        const std::vector<double> r = X.r_nodes();
        double my = X.yxi[out.i0], mr = r[out.i0], sup = 0.0;
        for (std::size_t i = out.i0; i <= out.i1; ++i) {
            my = std::min(my, X.yxi[i]);
            mr = std::min(mr, r[i]);
            sup = std::max(sup, X.h[i] + 2.0 * ak * std::abs(X.rbar[i]) + X.k * X.k * X.yxi[i]);
        }
        out.t.push_back(X.t);
        out.min_yxi.push_back(my);
        out.min_r.push_back(mr);
        out.implied_floor.push_back(sup > 0.0 ? out.c1_sq / sup : 0.0);
    }
    return out;
}

double sup_distance(const EulerianState& a, const EulerianState& b) {
    if (!(a.grid == b.grid)) throw ConfigError("sup_distance: grid mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.grid.n; ++i)
        m = std::max(m, std::abs(a.u[i] - b.u[i]));
    return m;
}

} // namespace chsys
