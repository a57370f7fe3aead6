#include "chsys/kernels.hpp"

#include <array>
#include <cmath>
#include <cstddef>

namespace chsys {

ChiValue chi_eval(double x) {
    ChiValue v;
    if (x <= 0.0) return v;
    if (x >= 1.0) {
        v.chi = 1.0;
        return v;
    }
    // chi = x^3 (10 - 15 x + 6 x^2)
    v.chi = x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
    v.dchi = 30.0 * x * x * (1.0 - x) * (1.0 - x);
    v.d2chi = 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
    return v;
}

namespace {

// chi'^2 + chi chi'': the kernel integrand (support [0,1], vanishes with
// its value at both ends).
double q_integrand(double z) {
    ChiValue v = chi_eval(z);
    return v.dchi * v.dchi + v.chi * v.d2chi;
}

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 4> kGlNode = {0.1834346424956498, 0.5255324099163290,
                                           0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGlWeight = {0.3626837833783620, 0.3137066458778873,
                                             0.2223810344533745, 0.1012285362903763};

// int_a^b e^{-|x-z|} q(z) dz and the x-derivative of the same integral,
// assuming x does not lie strictly inside (a, b).
void kernel_panel(double x, double a, double b, double* val, double* der) {
    const int panels = 8;
    const double w = (b - a) / panels;
    double s = 0.0, sd = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * w;
        for (std::size_t i = 0; i < kGlNode.size(); ++i) {
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                const double z = mid + sgn * 0.5 * w * kGlNode[i];
                const double f = std::exp(-std::abs(x - z)) * q_integrand(z);
                s += kGlWeight[i] * f;
                sd += kGlWeight[i] * (x >= z ? -f : f);
            }
        }
    }
    *val = 0.5 * w * s;
    *der = 0.5 * w * sd;
}

} // namespace

GValue g_eval(double x) {
    double I = 0.0, dI = 0.0;
    if (x <= 0.0 || x >= 1.0) {
        kernel_panel(x, 0.0, 1.0, &I, &dI);
    } else {
        double v1, d1, v2, d2;
        kernel_panel(x, 0.0, x, &v1, &d1);
        kernel_panel(x, x, 1.0, &v2, &d2);
        I = v1 + v2;
        dI = d1 + d2;
    }
    ChiValue cv = chi_eval(x);
    GValue v;
    v.g = cv.chi * cv.chi + I;
    v.dg = 2.0 * cv.chi * cv.dchi + dI;
    return v;
}

} // namespace chsys
