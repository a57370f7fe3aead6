#ifndef CHSYS_NUMERICS_HPP
#define CHSYS_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace chsys {

// Composite trapezoid rule on a uniform grid.
inline double trapz(const std::vector<double>& f, double dx) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * dx;
}

// Cumulative trapezoid, zero at the first node.
inline std::vector<double> cumtrapz(const std::vector<double>& f, double dx) {
    std::vector<double> F(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i)
        F[i] = F[i - 1] + 0.5 * dx * (f[i - 1] + f[i]);
    return F;
}

// Central differences in the interior, one-sided at the ends.
inline std::vector<double> central_diff(const std::vector<double>& f, double dx) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    d[0] = (f[1] - f[0]) / dx;
    d[n - 1] = (f[n - 1] - f[n - 2]) / dx;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
    return d;
}

// Discrete L2 norm (trapezoid quadrature of f^2).
inline double l2_norm(const std::vector<double>& f, double dx) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() * f.front() + f.back() * f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i] * f[i];
    return std::sqrt(s * dx);
}

inline double sup_norm(const std::vector<double>& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

// Index of the cell [x_i, x_{i+1}] containing x on a sorted abscissa,
// clamped to [0, n-2].
inline std::size_t locate_cell(const std::vector<double>& xs, double x) {
    if (xs.size() < 2 || x <= xs.front()) return 0;
    if (x >= xs.back()) return xs.size() - 2;
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    return std::min(i - 1, xs.size() - 2);
}

// Piecewise-linear evaluation on a sorted abscissa with constant extension.
inline double interp_linear(const std::vector<double>& xs, const std::vector<double>& fs, double x) {
    if (x <= xs.front()) return fs.front();
    if (x >= xs.back()) return fs.back();
    std::size_t i = locate_cell(xs, x);
    double w = xs[i + 1] - xs[i];
    if (w <= 0.0) return fs[i];
    double t = (x - xs[i]) / w;
    return fs[i] + t * (fs[i + 1] - fs[i]);
}

// Same, on a uniform grid given by (lo, dx).
inline double interp_uniform(double lo, double dx, const std::vector<double>& fs, double x) {
    const std::size_t n = fs.size();
    double s = (x - lo) / dx;
    if (s <= 0.0) return fs.front();
    if (s >= static_cast<double>(n - 1)) return fs.back();
    std::size_t i = static_cast<std::size_t>(s);
    if (i > n - 2) i = n - 2;
    double t = s - static_cast<double>(i);
    return fs[i] + t * (fs[i + 1] - fs[i]);
}

inline bool all_finite(const std::vector<double>& f) {
    for (double v : f)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace chsys

#endif
