// kernels.hpp — closed-form kernel expressions: residue forms of I(theta),
// the A^(i)(theta) combinations, K(theta), F(theta) and P(theta), for both
// damping regimes.

#pragma once

#include "qbm/params.hpp"
#include "qbm/quadrature.hpp"

namespace qbm::kernels {

using quadrature::EvalMethod;
using quadrature::KernelSample;
using quadrature::QuadratureConfig;

struct CoefficientSet {
    double theta{0.0};
    double A1{0.0};
    double A2{0.0};
    double A3{0.0};
    double A3_1{0.0}; // A^(3) + sin^2(S theta)/(8 zeta^2)   (sinh overdamped)
    double K{0.0};    // S cos(S theta) + R sin(S theta)     (cosh/sinh overdamped)
    double F{0.0};
    double P{0.0};
    Regime regime{};
};

// Selects where I(theta) and its derivatives come from.
struct KernelSource {
    EvalMethod method{EvalMethod::DirectQuadrature};
    QuadratureConfig quad{};
};

// High-temperature residue form, underdamped (kappa <= 0.1):
//   I(theta) = (pi/kappa S) e^{-R theta} [S cos(S theta) + R sin(S theta)]
KernelSample residue_I_highT(double theta, const BathParameters& params);

// Overdamped analogue (cos -> cosh, sin -> sinh).
KernelSample residue_I_overdamped_highT(double theta, const BathParameters& params);

// Zero-temperature strong-damping appendix form in terms of Gamma(0,x) and
// Ei(x) with pole positions approximated as {2R, 1/(2R)}. d2I at theta = 0 is
// divergent through this path (DivergentAtOrigin); requesting the sample at
// theta = 0 throws.
KernelSample zeroT_I_strong(double theta, const BathParameters& params);

// Dispatch on the source method. theta >= 0.
KernelSample kernel_sample(double theta, const BathParameters& params, const KernelSource& source);

// Assemble the coefficient set at theta. Overdamped parameters use the S -> iS
// substitution throughout; the reported A's carry the substituted (sign-flipped)
// convention while F and P are built from the real hyperbolic forms.
CoefficientSet coefficients(double theta, const BathParameters& params, const InitialState& state,
                            const KernelSource& source);

// F(inf) = -(1/8pi) d2I/dtheta^2|0, from the cutoff-regularized quadrature.
double F_asymptote(const BathParameters& params, const InitialState& state,
                   const QuadratureConfig& cfg = {});

// Half-width of the |sin(S theta)| window around its zeros inside which F is
// evaluated by local polynomial interpolation instead of the 0/0 form.
inline constexpr double kSingularWindow = 1e-3;

} // namespace qbm::kernels
