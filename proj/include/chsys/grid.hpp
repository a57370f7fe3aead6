#ifndef CHSYS_GRID_HPP
#define CHSYS_GRID_HPP

#include <cstddef>
#include <vector>

#include "chsys/errors.hpp"

namespace chsys {

// Uniform node grid on [lo, hi] with n nodes (both endpoints included).
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t n = 3;

    double dx() const { return (hi - lo) / static_cast<double>(n - 1); }
    double node(std::size_t i) const { return lo + static_cast<double>(i) * dx(); }

    std::vector<double> nodes() const {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = node(i);
        x.back() = hi;
        return x;
    }

    void validate() const {
        if (!(lo < hi)) throw ConfigError("GridSpec: lo must be < hi");
        if (n < 3) throw ConfigError("GridSpec: need at least 3 nodes");
    }

    bool operator==(const GridSpec& o) const { return lo == o.lo && hi == o.hi && n == o.n; }
};

} // namespace chsys

#endif
