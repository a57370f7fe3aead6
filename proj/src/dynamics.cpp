#include "chsys/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "chsys/errors.hpp"
#include "chsys/kernels.hpp"

namespace chsys {

PQField assemble_pq(const LagrangianState& X, const DynamicsOptions& opts) {
    const std::size_t n = X.grid.n;
    const double dxi = X.grid.dx();
    const double c = X.c;
    const double k = X.k;

    std::vector<double> y = X.y_nodes();
    std::vector<double> dyfac(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double dy = y[i + 1] - y[i];
        if (dy < -opts.y_decrease_tol) {
            std::ostringstream os;
            os << "assemble_pq: y decreases by " << -dy << " across cell " << i;
            throw InvariantError(os.str());
        }
        dyfac[i] = std::exp(-std::max(dy, 0.0));
    }

    // Kernel weight w = (2 Ubar^2 + 4 c Ubar chi(y)) yxi + 2 k rbar + h with
    // trapezoid end weights folded in.
    std::vector<double> W(n);
    for (std::size_t i = 0; i < n; ++i) {
        double ub = X.Ubar[i];
        double uu = 2.0 * ub * ub;
        if (c != 0.0) uu += 4.0 * c * ub * chi_eval(y[i]).chi;
        double w = uu * X.yxi[i] + 2.0 * k * X.rbar[i] + X.h[i];
        double theta = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        W[i] = theta * dxi * w;
    }

    // Two exponential prefix scans; only e^{-(y_{i+1}-y_i)} <= 1 is formed.
    std::vector<double> A(n), B(n);
    A[0] = W[0];
    for (std::size_t i = 1; i < n; ++i) A[i] = dyfac[i - 1] * A[i - 1] + W[i];
    B[n - 1] = W[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) B[i] = dyfac[i] * B[i + 1] + W[i];

    PQField pq;
    pq.P.resize(n);
    pq.Q.resize(n);
    const double half_k2 = 0.5 * k * k;
    const double c2 = c * c;
    for (std::size_t i = 0; i < n; ++i) {
        // A and B both carry the self term; |y_i - y_i| = 0 so it enters the
        // symmetric sum once and drops out of the signed sum.
        pq.P[i] = 0.25 * (A[i] + B[i] - W[i]) + half_k2;
        pq.Q[i] = -0.25 * (A[i] - B[i]);
        if (c != 0.0) {
            GValue gv = g_eval(y[i]);
            pq.P[i] += c2 * gv.g;
            pq.Q[i] += c2 * gv.dg;
        }
    }
    return pq;
}

StateDerivative rhs_eval(const LagrangianState& X, const PQField& pq) {
    const std::size_t n = X.grid.n;
    const double c = X.c;
    const double k = X.k;
    const double half_k2 = 0.5 * k * k;

    StateDerivative D;
    D.zeta.resize(n);
    D.Ubar.resize(n);
    D.yxi.resize(n);
    D.Uxi.resize(n);
    D.h.resize(n);
    D.rbar.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        double U = X.Ubar[i];
        double chi_d = 0.0;
        if (c != 0.0) {
            ChiValue cv = chi_eval(X.y(i));
            U += c * cv.chi;
            chi_d = cv.dchi;
        }
        const double s = U * U + half_k2 - pq.P[i];
        D.zeta[i] = U;
        D.Ubar[i] = -pq.Q[i] - c * chi_d * U;
        D.yxi[i] = X.Uxi[i];
        D.Uxi[i] = 0.5 * X.h[i] + s * X.yxi[i] + k * X.rbar[i];
        D.h[i] = 2.0 * s * X.Uxi[i];
        D.rbar[i] = -k * X.Uxi[i];
    }
    return D;
}

StateDerivative rhs_eval(const LagrangianState& X, const DynamicsOptions& opts) {
    return rhs_eval(X, assemble_pq(X, opts));
}

LagrangianState advanced(const LagrangianState& X, const StateDerivative& D, double a) {
    LagrangianState R = X;
    const std::size_t n = X.grid.n;
    for (std::size_t i = 0; i < n; ++i) {
        R.zeta[i] += a * D.zeta[i];
        R.Ubar[i] += a * D.Ubar[i];
        R.yxi[i] += a * D.yxi[i];
        R.Uxi[i] += a * D.Uxi[i];
        R.h[i] += a * D.h[i];
        R.rbar[i] += a * D.rbar[i];
    }
    R.t = X.t + a;
    return R;
}

namespace {

bool finite(const StateDerivative& D) {
    return all_finite(D.zeta) && all_finite(D.Ubar) && all_finite(D.yxi) &&
           all_finite(D.Uxi) && all_finite(D.h) && all_finite(D.rbar);
}

[[noreturn]] void blow_up(const char* stage, const LagrangianState& X, double dt) {
    std::ostringstream os;
    os << "rk4_step: non-finite values at stage " << stage << " (t = " << X.t
       << ", dt = " << dt << ")";
    throw BlowUpError(os.str());
}

} // namespace

LagrangianState rk4_step(const LagrangianState& X, double dt, const DynamicsOptions& opts) {
    if (!(dt > 0.0)) throw ConfigError("rk4_step: dt must be positive");

    StateDerivative k1 = rhs_eval(X, opts);
    if (!finite(k1)) blow_up("k1", X, dt);
    LagrangianState X2 = advanced(X, k1, 0.5 * dt);
    StateDerivative k2 = rhs_eval(X2, opts);
    if (!finite(k2)) blow_up("k2", X, dt);
    LagrangianState X3 = advanced(X, k2, 0.5 * dt);
    StateDerivative k3 = rhs_eval(X3, opts);
    if (!finite(k3)) blow_up("k3", X, dt);
    LagrangianState X4 = advanced(X, k3, dt);
    StateDerivative k4 = rhs_eval(X4, opts);
    if (!finite(k4)) blow_up("k4", X, dt);

    LagrangianState R = X;
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < X.grid.n; ++i) {
        R.zeta[i] += w * (k1.zeta[i] + 2.0 * k2.zeta[i] + 2.0 * k3.zeta[i] + k4.zeta[i]);
        R.Ubar[i] += w * (k1.Ubar[i] + 2.0 * k2.Ubar[i] + 2.0 * k3.Ubar[i] + k4.Ubar[i]);
        R.yxi[i] += w * (k1.yxi[i] + 2.0 * k2.yxi[i] + 2.0 * k3.yxi[i] + k4.yxi[i]);
        R.Uxi[i] += w * (k1.Uxi[i] + 2.0 * k2.Uxi[i] + 2.0 * k3.Uxi[i] + k4.Uxi[i]);
        R.h[i] += w * (k1.h[i] + 2.0 * k2.h[i] + 2.0 * k3.h[i] + k4.h[i]);
        R.rbar[i] += w * (k1.rbar[i] + 2.0 * k2.rbar[i] + 2.0 * k3.rbar[i] + k4.rbar[i]);
    }
    R.t = X.t + dt;
    if (!R.finite()) blow_up("update", X, dt);
    return R;
}

std::vector<LagrangianState> evolve(const LagrangianState& X0, double T, double dt,
                                    const std::vector<double>& snapshot_times,
                                    const std::vector<Observer>& observers,
                                    const DynamicsOptions& opts) {
    const double t0 = X0.t;
    if (T < t0) throw ConfigError("evolve: target time lies before the state's time");
    if (T > t0 && !(dt > 0.0)) throw ConfigError("evolve: dt must be positive");
    for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
        if (snapshot_times[i] < t0 - 1e-12 || snapshot_times[i] > T + 1e-12)
            throw ConfigError("evolve: snapshot time outside [t0, T]");
        if (i > 0 && snapshot_times[i] <= snapshot_times[i - 1])
            throw ConfigError("evolve: snapshot times must be strictly increasing");
    }

    const double eps = 1e-12 * std::max(1.0, std::abs(T));
    std::vector<LagrangianState> out;
    LagrangianState cur = X0;
    for (const Observer& ob : observers) ob(cur);

    std::size_t next = 0;
    while (next < snapshot_times.size() && snapshot_times[next] <= t0 + eps) {
        out.push_back(cur);
        ++next;
    }

    while (cur.t < T - eps) {
        double stop = (next < snapshot_times.size()) ? std::min(snapshot_times[next], T) : T;
        while (cur.t < stop - eps) {
            double step = std::min(dt, stop - cur.t);
            cur = rk4_step(cur, step, opts);
            if (std::abs(cur.t - stop) <= eps) cur.t = stop;
            for (const Observer& ob : observers) ob(cur);
        }
        if (next < snapshot_times.size() && std::abs(stop - snapshot_times[next]) <= eps) {
            out.push_back(cur);
            ++next;
        }
    }
    return out;
}

} // namespace chsys
