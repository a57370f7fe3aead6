#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chsys/diagnostics.hpp"
#include "chsys/dynamics.hpp"
#include "chsys/transform.hpp"
#include "helpers.hpp"

using namespace chsys;
using namespace chsys::testing;

namespace {

// O(N^2) reference evaluation of the kernel sums with explicit exponentials;
// kept independent of the scan implementation.
PQField pq_brute(const LagrangianState& X) {
    const std::size_t n = X.grid.n;
    const double dxi = X.grid.dx();
    const std::vector<double> y = X.y_nodes();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        double ub = X.Ubar[i];
        w[i] = 2.0 * ub * ub * X.yxi[i] + 2.0 * X.k * X.rbar[i] + X.h[i];
    }
    PQField pq;
    pq.P.assign(n, 0.0);
    pq.Q.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double p = 0.0, q = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double theta = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
            double ker = std::exp(-std::abs(y[i] - y[j])) * w[j] * theta * dxi;
            p += ker;
            if (j < i) q += ker;
            else if (j > i) q -= ker;
        }
        pq.P[i] = 0.25 * p + 0.5 * X.k * X.k;
        pq.Q[i] = -0.25 * q;
    }
    return pq;
}

LagrangianState lagrangian_of(const std::string& scenario, std::size_t n, double k,
                              double amplitude = 1.0) {
    EulerianState s = make_state(scenario, n, k, amplitude);
    return to_lagrangian(s, default_xi_grid(s));
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double state_diff(const LagrangianState& a, const LagrangianState& b) {
    double m = max_abs_diff(a.zeta, b.zeta);
    m = std::max(m, max_abs_diff(a.Ubar, b.Ubar));
    m = std::max(m, max_abs_diff(a.yxi, b.yxi));
    m = std::max(m, max_abs_diff(a.Uxi, b.Uxi));
    m = std::max(m, max_abs_diff(a.h, b.h));
    m = std::max(m, max_abs_diff(a.rbar, b.rbar));
    return m;
}

} // namespace

TEST_CASE("assemble_pq: zero state") {
    LagrangianState X = LagrangianState::identity(GridSpec{-10.0, 10.0, 401});
    PQField pq = assemble_pq(X);
    for (std::size_t i = 0; i < X.grid.n; ++i) {
        CHECK(pq.P[i] == 0.0);
        CHECK(pq.Q[i] == 0.0);
    }
}

TEST_CASE("assemble_pq: constant background k = 3 gives P = k^2/2") {
    LagrangianState X = LagrangianState::identity(GridSpec{-10.0, 10.0, 401});
    X.k = 3.0;
    PQField pq = assemble_pq(X);
    for (std::size_t i = 0; i < X.grid.n; ++i) {
        CHECK(pq.P[i] == 4.5);
        CHECK(pq.Q[i] == 0.0);
    }
}

TEST_CASE("assemble_pq: box energy density against the closed form") {
    GridSpec g{-10.0, 10.0, 2001};
    LagrangianState X = LagrangianState::identity(g);
    for (std::size_t i = 0; i < g.n; ++i) {
        double xi = g.node(i);
        X.h[i] = (std::abs(xi) <= 1.0) ? 1.0 : 0.0;
    }
    PQField pq = assemble_pq(X);
    std::size_t mid = g.n / 2; // xi = 0
    // P(0) = 1/4 int_{-1}^{1} e^{-|eta|} d eta = (1 - e^{-1})/2; the sampled
    // indicator smears each edge over one cell, a first-order quadrature term
    double expect = 0.5 * (1.0 - std::exp(-1.0));
    CHECK(std::abs(pq.P[mid] - expect) <= g.dx());
    CHECK(std::abs(pq.Q[mid]) <= 1e-12);
}

TEST_CASE("assemble_pq: scan equals the O(N^2) reference") {
    for (const char* name : {"single_peakon", "dambreak_2ch"}) {
        LagrangianState X = lagrangian_of(name, 641, name[0] == 'd' ? 0.8 : 0.3);
        PQField fast = assemble_pq(X);
        PQField slow = pq_brute(X);
        CHECK(max_abs_diff(fast.P, slow.P) <= 1e-12);
        CHECK(max_abs_diff(fast.Q, slow.Q) <= 1e-12);
    }
}

TEST_CASE("assemble_pq: P stays nonnegative when rbar = 0") {
    LagrangianState X = lagrangian_of("single_peakon", 1001, 0.0);
    PQField pq = assemble_pq(X);
    for (double p : pq.P) CHECK(p >= 0.0);
}

TEST_CASE("assemble_pq: rejects decreasing y") {
    LagrangianState X = LagrangianState::identity(GridSpec{-1.0, 1.0, 101});
    X.zeta[50] = -0.5; // forces y to decrease across one cell
    CHECK_THROWS_AS(assemble_pq(X), InvariantError);
}

TEST_CASE("rhs: zero state is stationary") {
    LagrangianState X = LagrangianState::identity(GridSpec{-10.0, 10.0, 201});
    StateDerivative D = rhs_eval(X);
    for (std::size_t i = 0; i < X.grid.n; ++i) {
        CHECK(D.zeta[i] == 0.0);
        CHECK(D.Ubar[i] == 0.0);
        CHECK(D.yxi[i] == 0.0);
        CHECK(D.Uxi[i] == 0.0);
        CHECK(D.h[i] == 0.0);
        CHECK(D.rbar[i] == 0.0);
    }
}

TEST_CASE("rhs: constant density rest state cancels exactly") {
    LagrangianState X = LagrangianState::identity(GridSpec{-10.0, 10.0, 201});
    X.k = 1.0;
    StateDerivative D = rhs_eval(X);
    // P = k^2/2 makes U^2 + k^2/2 - P vanish identically
    for (std::size_t i = 0; i < X.grid.n; ++i) {
        CHECK(D.Uxi[i] == 0.0);
        CHECK(D.h[i] == 0.0);
        CHECK(D.rbar[i] == 0.0);
        CHECK(D.zeta[i] == 0.0);
    }
}

TEST_CASE("Q_xi identity converges at second order on a smooth state") {
    auto defect = [](std::size_t n) {
        LagrangianState X = lagrangian_of("dambreak_2ch", n, 1.0);
        PQField pq = assemble_pq(X);
        const double dxi = X.grid.dx();
        const std::vector<double> U = X.U_nodes();
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < X.grid.n; ++i) {
            double dq = (pq.Q[i + 1] - pq.Q[i - 1]) / (2.0 * dxi);
            double rhs = -0.5 * X.h[i] -
                         (U[i] * U[i] + 0.5 * X.k * X.k - pq.P[i]) * X.yxi[i] -
                         X.k * X.rbar[i];
            worst = std::max(worst, std::abs(dq - rhs));
        }
        return worst;
    };
    double coarse = defect(501);
    double fine = defect(2001);
    CHECK(fine <= coarse / 10.0);
}

TEST_CASE("rk4_step: steady state is a fixed point to roundoff") {
    LagrangianState X = LagrangianState::identity(GridSpec{-10.0, 10.0, 201});
    X.k = 1.0;
    LagrangianState Y = rk4_step(X, 0.1);
    CHECK(state_diff(X, Y) == 0.0);
    CHECK(Y.t == doctest::Approx(0.1));
}

TEST_CASE("rk4_step: c and k are carried bitwise") {
    LagrangianState X = lagrangian_of("dambreak_2ch", 401, 0.7);
    X.c = 0.0;
    LagrangianState Y = rk4_step(X, 1e-2);
    CHECK(Y.k == X.k);
    CHECK(Y.c == X.c);
}

TEST_CASE("rk4_step: non-finite data reports a blow-up with the stage") {
    LagrangianState X = LagrangianState::identity(GridSpec{-1.0, 1.0, 51});
    X.Ubar.assign(X.grid.n, 1e200); // w ~ 1e400 overflows in the kernel weight
    try {
        rk4_step(X, 1e-3);
        FAIL("expected BlowUpError");
    } catch (const BlowUpError& e) {
        CHECK(std::string(e.what()).find("stage") != std::string::npos);
    }
}

TEST_CASE("rk4 global order: Richardson triple shows dt^4") {
    LagrangianState X = lagrangian_of("dambreak_2ch", 601, 1.0);
    const double T = 0.4;
    auto final_state = [&](double dt) {
        std::vector<LagrangianState> snaps = evolve(X, T, dt, {T});
        return snaps.back();
    };
    LagrangianState a = final_state(0.04);
    LagrangianState b = final_state(0.02);
    LagrangianState c = final_state(0.01);
    double e1 = state_diff(a, b);
    double e2 = state_diff(b, c);
    REQUIRE(e2 > 0.0);
    double ratio = e1 / e2;
    CHECK(ratio >= 9.0);
    CHECK(ratio <= 30.0);
}

TEST_CASE("evolve: steady state stays put and snapshots are delivered") {
    LagrangianState X = LagrangianState::identity(GridSpec{-10.0, 10.0, 201});
    X.k = 1.0;
    std::size_t calls = 0;
    Observer count = [&](const LagrangianState&) { ++calls; };
    std::vector<LagrangianState> snaps = evolve(X, 1.0, 1e-2, {0.0, 0.5, 1.0}, {count});
    REQUIRE(snaps.size() == 3);
    CHECK(snaps[0].t == 0.0);
    CHECK(snaps[1].t == 0.5);
    CHECK(snaps[2].t == 1.0);
    CHECK(state_diff(snaps[0], snaps[2]) == 0.0);
    CHECK(calls == 101); // initial sample + one per step
}

TEST_CASE("evolve: semigroup property within integrator error") {
    LagrangianState X = lagrangian_of("single_peakon", 1001, 0.0);
    const double dt = 1e-2;
    LagrangianState full = evolve(X, 1.0, dt, {1.0}).back();
    LagrangianState half = evolve(X, 0.5, dt, {0.5}).back();
    LagrangianState glued = evolve(half, 1.0, dt, {1.0}).back();
    // both paths are 4th-order approximations of the same flow
    CHECK(state_diff(full, glued) <= 100.0 * dt * dt * dt * dt + 1e-12);
}

TEST_CASE("evolve: invariants drift at fourth order") {
    LagrangianState X = lagrangian_of("peakon_antipeakon", 1201, 0.5, 1.0);
    auto drift = [&](double dt) {
        LagrangianState end = evolve(X, 1.0, dt, {1.0}).back();
        ResidualReport rep = invariant_residuals(end, X);
        return rep.get("g_defect");
    };
    double coarse = drift(2e-2);
    double fine = drift(5e-3);
    REQUIRE(coarse > 1e-14); // above the roundoff floor, so the ratio is meaningful
    CHECK(fine <= coarse / 50.0);
}
