#include "qbm/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qbm::fitting {

namespace {

LinearFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0))
        throw Error(ErrorCode::WindowTooNarrow, "fit: degenerate abscissae");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
    }
    f.residual_rms = std::sqrt(ss_res / n);
    f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    f.n_points = static_cast<int>(n);
    return f;
}

} // namespace

LinearFit fit_decay_rate(std::span<const std::pair<double, double>> series,
                         double window_lo, double window_hi) {
    if (!(window_hi > window_lo))
        throw Error(ErrorCode::WindowTooNarrow, "fit_decay_rate: empty window");
    std::vector<double> x, y;
    for (const auto& [theta, value] : series) {
        if (theta >= window_lo && theta <= window_hi) {
            x.push_back(theta);
            y.push_back(value);
        }
    }
    if (x.size() < 8)
        throw Error(ErrorCode::WindowTooNarrow,
                    "fit_decay_rate: fewer than 8 samples inside the window");
    LinearFit f = ols(x, y);
    f.window_lo = window_lo;
    f.window_hi = window_hi;
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double range = *hi - *lo;
    if (range > 0.0 && f.residual_rms > 0.1 * range)
        throw Error(ErrorCode::NonlinearSeries,
                    "fit_decay_rate: residual rms exceeds 10% of the fitted range");
    return f;
}

LinearFit fit_log_divergence(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 3)
        throw Error(ErrorCode::WindowTooNarrow, "fit_log_divergence: need at least 3 cutoffs");
    double lo = samples[0].first, hi = samples[0].first;
    for (const auto& [lc, v] : samples) {
        if (!(lc > 0.0))
            throw Error(ErrorCode::InvalidParameter, "fit_log_divergence: lambda_c must be > 0");
        lo = std::min(lo, lc);
        hi = std::max(hi, lc);
    }
    if (std::log10(hi / lo) < 3.0 - 1e-9)
        throw Error(ErrorCode::WindowTooNarrow,
                    "fit_log_divergence: lambda_c samples must span >= 3 decades");
    std::vector<double> x, y;
    for (const auto& [lc, v] : samples) {
        x.push_back(std::log(lc));
        y.push_back(v);
    }
    LinearFit f = ols(x, y);
    f.window_lo = lo;
    f.window_hi = hi;
    return f;
}

} // namespace qbm::fitting
