#include "qbm/specfun.hpp"

#include <cmath>
#include <limits>

#include "qbm/errors.hpp"

namespace qbm::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Power series valid for all x > 0 (used below the switchover points):
//   E1(x) = -gamma - ln x + sum_{n>=1} (-1)^{n+1} x^n / (n * n!)
//   Ei(x) = +gamma + ln x + sum_{n>=1} x^n / (n * n!)
double series_sum(double x, bool alternating) {
    double term = 1.0;
    double sum = 0.0;
    for (int n = 1; n < 400; ++n) {
        term *= x / n;
        const double contrib = term / n;
        sum += alternating && (n % 2 == 0) ? -contrib : contrib;
        if (std::abs(contrib) < kEps * std::abs(sum))
            break;
    }
    return sum;
}

// Continued fraction for e^{x} E1(x), stable for x >= 1 (modified Lentz):
//   E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(x + 7 - ...))))
double e1_scaled_cf(double x) {
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 200; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            break;
    }
    return h;
}

// Asymptotic sum for x * e^{-x} Ei(x) ~ sum n!/x^n, truncated at the smallest term.
double ei_scaled_asymptotic(double x) {
    double term = 1.0;
    double sum = 1.0;
    double prev = 1.0;
    for (int n = 1; n < 200; ++n) {
        term *= n / x;
        if (term > prev)
            break; // divergent tail reached
        sum += term;
        prev = term;
        if (term < kEps * sum)
            break;
    }
    return sum / x;
}

} // namespace

double coth_weight(double lambda, double kappa) {
    if (!(lambda >= 0.0) || !(kappa > 0.0))
        throw Error(ErrorCode::InvalidParameter, "coth_weight: requires lambda >= 0, kappa > 0");
    const double z = kappa * lambda;
    if (z < 1e-3) {
        // lambda*coth(kappa*lambda) = 1/kappa + kappa*lambda^2/3 - kappa^3*lambda^4/45 + ...
        const double l2 = lambda * lambda;
        const double k2 = kappa * kappa;
        return 1.0 / kappa + kappa * l2 * (1.0 / 3.0 - k2 * l2 / 45.0 + k2 * k2 * l2 * l2 * (2.0 / 945.0));
    }
    if (z > 19.0)
        return lambda; // coth saturated to 1 below 1e-16
    return lambda * (1.0 + 2.0 / std::expm1(2.0 * z));
}

double exp_integral_E1(double x) {
    if (!(x > 0.0))
        throw Error(ErrorCode::InvalidParameter, "exp_integral_E1: requires x > 0");
    if (x < 1.0)
        return -kEulerGamma - std::log(x) + series_sum(x, true);
    return std::exp(-x) * e1_scaled_cf(x);
}

double exp_integral_Ei(double x) {
    if (!(x > 0.0))
        throw Error(ErrorCode::InvalidParameter, "exp_integral_Ei: requires x > 0");
    if (x < 40.0)
        return kEulerGamma + std::log(x) + series_sum(x, false);
    return std::exp(x) * ei_scaled_asymptotic(x);
}

double e1_scaled(double x) {
    if (!(x > 0.0))
        throw Error(ErrorCode::InvalidParameter, "e1_scaled: requires x > 0");
    if (x < 1.0)
        return std::exp(x) * (-kEulerGamma - std::log(x) + series_sum(x, true));
    return e1_scaled_cf(x);
}

double ei_scaled(double x) {
    if (!(x > 0.0))
        throw Error(ErrorCode::InvalidParameter, "ei_scaled: requires x > 0");
    if (x < 40.0)
        return std::exp(-x) * (kEulerGamma + std::log(x) + series_sum(x, false));
    return ei_scaled_asymptotic(x);
}

} // namespace qbm::specfun
