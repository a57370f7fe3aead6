#ifndef CHSYS_TEST_HELPERS_HPP
#define CHSYS_TEST_HELPERS_HPP

#include <cmath>

#include "chsys/scenario.hpp"
#include "chsys/state.hpp"

namespace chsys::testing {

inline ScenarioConfig base_config(const std::string& scenario, std::size_t n = 2001,
                                  double lo = -20.0, double hi = 20.0) {
    ScenarioConfig cfg;
    cfg.scenario = scenario;
    cfg.x_lo = lo;
    cfg.x_hi = hi;
    cfg.x_n = n;
    return cfg;
}

inline EulerianState make_state(const std::string& scenario, std::size_t n = 2001,
                                double k = 0.0, double amplitude = 1.0) {
    ScenarioConfig cfg = base_config(scenario, n);
    cfg.background_k = k;
    cfg.amplitude = amplitude;
    if (scenario == "peakon_antipeakon") cfg.position = 3.0;
    return build_scenario(cfg);
}

// Compactly supported C^2 bump b(s) = (1 - s^2)^3 on |s| <= 1.
inline double bump(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    double w = 1.0 - s * s;
    return w * w * w;
}

inline double bump_prime(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    double w = 1.0 - s * s;
    return -6.0 * s * w * w;
}

// f = id + amp * b((xi - center)/width), with the exact derivative.
inline RelabelingMap bump_relabeling(const GridSpec& g, double amp, double center,
                                     double width) {
    RelabelingMap m;
    m.grid = g;
    m.f.resize(g.n);
    m.fxi.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        double xi = g.node(i);
        double s = (xi - center) / width;
        m.f[i] = xi + amp * bump(s);
        m.fxi[i] = 1.0 + amp / width * bump_prime(s);
    }
    return m;
}

} // namespace chsys::testing

#endif
