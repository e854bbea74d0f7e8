// fitting.hpp — linear extraction of decay rates and log-divergence slopes
// from computed series

#pragma once

#include <span>
#include <utility>

#include "qbm/errors.hpp"

namespace qbm::fitting {

struct LinearFit {
    double slope{0.0};
    double intercept{0.0};
    double residual_rms{0.0};
    double window_lo{0.0};
    double window_hi{0.0};
    int n_points{0};
    double r_squared{0.0};
};

// Ordinary least squares through the (theta, F r^2) samples inside
// [window_lo, window_hi]. Gamma = slope in omega0 units; tau_D = 1/Gamma.
// Throws WindowTooNarrow below 8 points, NonlinearSeries when the residual rms
// exceeds 10% of the fitted range (a regime-gate violation, not noise).
LinearFit fit_decay_rate(std::span<const std::pair<double, double>> series,
                         double window_lo, double window_hi);

// Slope of -d2I/dtheta^2|0 versus ln(lambda_c). Requires >= 3 samples spanning
// at least 3 decades of lambda_c.
LinearFit fit_log_divergence(std::span<const std::pair<double, double>> samples);

} // namespace qbm::fitting
