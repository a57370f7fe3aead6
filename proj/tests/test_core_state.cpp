#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chsys/core_state.hpp"
#include "chsys/errors.hpp"

using namespace chsys;

namespace {

GridSpec grid(double lo, double hi, std::size_t n) { return GridSpec{lo, hi, n}; }

EulerianState peakon_state(double a, double x0, const GridSpec& g) {
    EulerianState s = EulerianState::zero(g);
    for (std::size_t i = 0; i < g.n; ++i)
        s.u[i] = a * std::exp(-std::abs(g.node(i) - x0));
    std::vector<double> ux = central_diff(s.u, g.dx());
    for (std::size_t i = 0; i < g.n; ++i) s.mu.density[i] = ux[i] * ux[i];
    return s;
}

} // namespace

TEST_CASE("grid spec basics") {
    GridSpec g = grid(-2.0, 2.0, 5);
    CHECK(g.dx() == doctest::Approx(1.0));
    CHECK(g.node(0) == -2.0);
    CHECK(g.node(4) == 2.0);
    CHECK_THROWS_AS(grid(1.0, 0.0, 5).validate(), ConfigError);
    CHECK_THROWS_AS(grid(0.0, 1.0, 2).validate(), ConfigError);
}

TEST_CASE("radon measure masses") {
    GridSpec g = grid(-1.0, 1.0, 201);
    RadonMeasure m = RadonMeasure::zero(g);
    m.density.assign(g.n, 1.0);
    CHECK(m.total_mass() == doctest::Approx(2.0));
    m.atoms.push_back({0.25, 0.5});
    CHECK(m.total_mass() == doctest::Approx(2.5));
    // open interval: the atom at 0.25 is not counted at x = 0.25
    CHECK(m.mass_before(0.25) == doctest::Approx(1.25));
    CHECK(m.mass_before(0.25 + 1e-9) == doctest::Approx(1.75).epsilon(1e-6));
    m.atoms.push_back({0.25, 0.5});
    CHECK_THROWS_AS(m.validate(), MalformedStateError);
}

TEST_CASE("validate_eulerian: zero state") {
    EulerianState s = EulerianState::zero(grid(-5.0, 5.0, 101));
    ResidualReport rep = validate_eulerian(s);
    CHECK(rep.valid);
    CHECK(rep.get("boundary") == 0.0);
    CHECK(rep.get("compatibility") == 0.0);
    CHECK(rep.get("total_mass") == 0.0);
}

TEST_CASE("validate_eulerian: constant density is compatible") {
    EulerianState s = EulerianState::zero(grid(-5.0, 5.0, 101));
    s.rho.assign(s.grid.n, 2.0);
    s.k = 2.0;
    ResidualReport rep = validate_eulerian(s);
    CHECK(rep.valid);
    CHECK(rep.get("compatibility") == 0.0);
}

TEST_CASE("validate_eulerian: flags a deliberately inconsistent measure") {
    EulerianState s = EulerianState::zero(grid(-5.0, 5.0, 101));
    s.mu.density.assign(s.grid.n, 1.0);
    ResidualReport rep = validate_eulerian(s);
    CHECK_FALSE(rep.valid);
    CHECK(rep.get("compatibility") == doctest::Approx(1.0));
}

TEST_CASE("validate_eulerian: idempotent and pure") {
    EulerianState s = peakon_state(1.0, 0.0, grid(-20.0, 20.0, 801));
    ResidualReport r1 = validate_eulerian(s);
    ResidualReport r2 = validate_eulerian(s);
    CHECK(r1.valid == r2.valid);
    for (const auto& [k, e] : r1.entries) {
        CHECK(r2.entries.count(k) == 1);
        CHECK(r2.entries[k].value == e.value);
    }
}

TEST_CASE("validate_eulerian: non-finite input is malformed") {
    EulerianState s = EulerianState::zero(grid(-1.0, 1.0, 11));
    s.u[3] = std::nan("");
    CHECK_THROWS_AS(validate_eulerian(s), MalformedStateError);
}

TEST_CASE("canonicalize: identity frame") {
    GridSpec g = grid(-5.0, 5.0, 101);
    std::vector<double> u(g.n, 0.0), rho(g.n, 1.0);
    CanonicalizeResult res = canonicalize(g, u, rho, 0.0, 1.0, 0.0);
    CHECK(res.alpha == 0.0);
    CHECK(res.kappa_prime == 0.0);
    CHECK(res.state.k == doctest::Approx(1.0));
    CHECK(res.state.c == 0.0);
    for (double v : res.state.u) CHECK(v == 0.0);
}

TEST_CASE("canonicalize: kappa' arithmetic is reported in the error") {
    GridSpec g = grid(-5.0, 5.0, 101);
    std::vector<double> u(g.n, -1.0), rho(g.n, 0.0);
    // alpha = 1, kappa' = -2 - 2 = -4
    try {
        canonicalize(g, u, rho, -2.0, 1.0, -1.0);
        FAIL("expected UnsupportedError");
    } catch (const UnsupportedError& e) {
        CHECK(std::string(e.what()).find("-4") != std::string::npos);
    }
}

TEST_CASE("canonicalize: shift alone is accepted when kappa = 2 alpha") {
    GridSpec g = grid(-5.0, 5.0, 101);
    std::vector<double> u(g.n, -1.0), rho(g.n, 0.0);
    CanonicalizeResult res = canonicalize(g, u, rho, 2.0, 1.0, -1.0);
    CHECK(res.alpha == 1.0);
    CHECK(res.kappa_prime == 0.0);
    for (double v : res.state.u) CHECK(v == 0.0);
}

TEST_CASE("canonicalize: sqrt(eta) scaling doubles rho and k") {
    GridSpec g = grid(-5.0, 5.0, 101);
    std::vector<double> u(g.n, 0.0), rho(g.n, 1.5);
    CanonicalizeResult res = canonicalize(g, u, rho, 0.0, 4.0, 0.0);
    CHECK(res.state.k == doctest::Approx(3.0));
    for (double v : res.state.rho) CHECK(v == doctest::Approx(3.0));
    CHECK_THROWS_AS(canonicalize(g, u, rho, 0.0, -1.0, 0.0), ConfigError);
}

TEST_CASE("canonicalize twice with the canonical parameters is the identity") {
    GridSpec g = grid(-20.0, 20.0, 801);
    EulerianState s = peakon_state(1.0, 0.0, g);
    CanonicalizeResult once = canonicalize(g, s.u, s.rho, 0.0, 1.0, 0.0);
    CanonicalizeResult twice = canonicalize(g, once.state.u, once.state.rho,
                                            once.kappa_prime, 1.0, 0.0);
    for (std::size_t i = 0; i < g.n; ++i) {
        CHECK(twice.state.u[i] == once.state.u[i]);
        CHECK(twice.state.rho[i] == once.state.rho[i]);
    }
}

TEST_CASE("total energy: zero state and unit atom") {
    EulerianState s = EulerianState::zero(grid(-5.0, 5.0, 101));
    CHECK(total_energy_eulerian(s) == 0.0);
    s.mu.atoms.push_back({0.0, 1.0});
    CHECK(total_energy_eulerian(s) == doctest::Approx(1.0));
}

TEST_CASE("total energy: peakon carries energy 2 a^2") {
    // int e^{-2|x|} dx = 1 for both u^2 and u_x^2; the discrete derivative
    // flattens the peak over one cell, so the defect is first order in dx
    double err_coarse = 0.0;
    for (std::size_t n : {4001, 8001}) {
        GridSpec g = grid(-25.0, 25.0, n);
        EulerianState s = peakon_state(1.0, 0.0, g);
        double err = std::abs(total_energy_eulerian(s) - 2.0);
        CHECK(err <= 2.0 * g.dx());
        if (n == 4001) err_coarse = err;
        else CHECK(err <= 0.6 * err_coarse);
    }
    GridSpec g = grid(-25.0, 25.0, 801);
    EulerianState s = peakon_state(1.0, 0.0, g);
    s.c = 0.5;
    CHECK_THROWS_AS(total_energy_eulerian(s), UnsupportedError);
}
