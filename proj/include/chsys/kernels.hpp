#ifndef CHSYS_KERNELS_HPP
#define CHSYS_KERNELS_HPP

namespace chsys {

// Partition function: quintic smoothstep, chi = 0 for x <= 0, chi = 1 for
// x >= 1, C^2 across the junctions (the kernel below needs chi'').
struct ChiValue {
    double chi = 0.0;
    double dchi = 0.0;
    double d2chi = 0.0;
};

ChiValue chi_eval(double x);

// g(x) = chi^2(x) + 1/2 int e^{-|x-z|} (2 chi'^2 + 2 chi chi'')(z) dz,
// evaluated in closed form (the integrand is a degree-8 polynomial on [0,1]).
// g increases monotonically from 0 at -inf to 1 at +inf and solves
// g - g'' = chi^2.
struct GValue {
    double g = 0.0;
    double dg = 0.0;
};

GValue g_eval(double x);

} // namespace chsys

#endif
