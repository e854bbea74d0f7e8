#include "qbm/params.hpp"

#include <cmath>

namespace qbm {

Regime classify(const BathParameters& params) {
    params.validate();
    const double R = params.R;
    if (std::abs(R - 1.0) <= kCriticalTolerance)
        return Regime{RegimeKind::Critical, 0.0};
    if (R < 1.0)
        return Regime{RegimeKind::Underdamped, std::sqrt((1.0 - R) * (1.0 + R))};
    return Regime{RegimeKind::Overdamped, std::sqrt((R - 1.0) * (R + 1.0))};
}

double relaxation_time(const BathParameters& params) {
    params.validate();
    if (params.R < 0.5)
        return 1.0 / params.R;
    if (params.R > 2.0)
        return 2.0 * params.R;
    throw Error(ErrorCode::IntermediateDampingUnsupported,
                "relaxation_time: no closed form for intermediate damping (0.5 <= R <= 2)");
}

} // namespace qbm
