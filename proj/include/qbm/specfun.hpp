// specfun.hpp — special functions and regularized kernels for the quadrature
// and the zero-temperature closed forms

#pragma once

namespace qbm::specfun {

struct EvaluationResult {
    double value{0.0};
    double est_error{0.0}; // absolute
};

// lambda * coth(kappa*lambda), with the removable singularity at lambda = 0
// evaluated by series (value -> 1/kappa). Taylor branch for kappa*lambda < 1e-3.
double coth_weight(double lambda, double kappa);

// E1(x) = Gamma(0,x) = int_x^inf e^{-t}/t dt, x > 0. Series below x = 1,
// continued fraction above; relative accuracy <= 1e-12.
double exp_integral_E1(double x);

// Principal-value exponential integral Ei(x), x > 0. Series below x = 40,
// asymptotic expansion above; relative accuracy <= 1e-10.
double exp_integral_Ei(double x);

// Overflow-safe scaled products used by the zero-temperature kernel forms.
double e1_scaled(double x);  // e^{+x} E1(x)
double ei_scaled(double x);  // e^{-x} Ei(x)

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

} // namespace qbm::specfun
