#include "uavcre/quadrature.hpp"

namespace uavcre {

void QuadratureSpec::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw ParameterError("quadrature tolerances must be positive");
    if (max_subdivisions < 8)
        throw ParameterError("quadrature max_subdivisions must be at least 8");
}

} // namespace uavcre
