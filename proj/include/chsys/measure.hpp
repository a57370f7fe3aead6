#ifndef CHSYS_MEASURE_HPP
#define CHSYS_MEASURE_HPP

#include <vector>

#include "chsys/grid.hpp"
#include "chsys/numerics.hpp"

namespace chsys {

// Finite positive Radon measure on the truncated line: a sampled density
// (energy per unit length, trapezoid-integrated between nodes) plus a finite
// list of point atoms. Atoms are kept exact, never smeared onto the grid.
struct RadonMeasure {
    struct Atom {
        double pos = 0.0;
        double mass = 0.0;
    };

    GridSpec grid;
    std::vector<double> density; // one value per grid node, >= 0
    std::vector<Atom> atoms;     // positions strictly increasing, masses > 0

    static RadonMeasure zero(const GridSpec& g) {
        RadonMeasure m;
        m.grid = g;
        m.density.assign(g.n, 0.0);
        return m;
    }

    double density_mass() const { return trapz(density, grid.dx()); }

    double atom_mass() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.mass;
        return s;
    }

    double total_mass() const { return density_mass() + atom_mass(); }

    // mu((-inf, x)): open interval, so an atom exactly at x is not counted.
    double mass_before(double x) const {
        double s = 0.0;
        if (x > grid.lo) {
            const double dx = grid.dx();
            double xc = std::min(x, grid.hi);
            double pos = static_cast<double>((xc - grid.lo) / dx);
            std::size_t i = std::min(static_cast<std::size_t>(pos), grid.n - 2);
            for (std::size_t j = 0; j < i; ++j) s += 0.5 * dx * (density[j] + density[j + 1]);
            double t = (xc - grid.node(i)) / dx;
            if (t > 0.0) {
                double dl = density[i];
                double dr = density[i + 1];
                // trapezoid of the linear density over the partial cell
                s += dx * t * (dl + 0.5 * t * (dr - dl));
            }
        }
        for (const auto& a : atoms)
            if (a.pos < x) s += a.mass;
        return s;
    }

    void validate() const {
        grid.validate();
        if (density.size() != grid.n) throw MalformedStateError("RadonMeasure: density size mismatch");
        if (!all_finite(density)) throw MalformedStateError("RadonMeasure: non-finite density");
        for (double v : density)
            if (v < 0.0) throw MalformedStateError("RadonMeasure: negative density");
        double prev = grid.lo - 1.0;
        for (const auto& a : atoms) {
            if (!(a.mass > 0.0) || !std::isfinite(a.mass) || !std::isfinite(a.pos))
                throw MalformedStateError("RadonMeasure: atom with nonpositive or non-finite mass/position");
            if (!(a.pos > prev)) throw MalformedStateError("RadonMeasure: atom positions must be strictly increasing");
            if (a.pos < grid.lo || a.pos > grid.hi)
                throw MalformedStateError("RadonMeasure: atom outside the grid");
            prev = a.pos;
        }
        if (!std::isfinite(total_mass())) throw MalformedStateError("RadonMeasure: infinite total mass");
    }
};

} // namespace chsys

#endif
