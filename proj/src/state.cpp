#include "chsys/state.hpp"

#include "chsys/kernels.hpp"

namespace chsys {

std::vector<double> LagrangianState::U_nodes() const {
    std::vector<double> v(Ubar);
    if (c != 0.0)
        for (std::size_t i = 0; i < grid.n; ++i) v[i] += c * chi_eval(y(i)).chi;
    return v;
}

} // namespace chsys
