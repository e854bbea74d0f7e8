// quadrature.hpp — adaptive Gauss-Kronrod integration of the bath kernel
// integrals: production path for I(theta) and brute-force oracle for every
// closed form downstream.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qbm/params.hpp"
#include "qbm/specfun.hpp"

namespace qbm::quadrature {

// How the thermal factor coth(kappa*lambda) enters the lambda integrand.
//   Auto  : exact coth, switching to Unity when kappa >= 50 (zero-T proxy,
//           flagged on the sample) because the thermal poles at i*pi*n/kappa
//           crowd the origin and break the pole-free error model.
//   Exact : lambda*coth(kappa*lambda) (regularized at 0)
//   HighT : coth -> 1/(kappa*lambda), i.e. constant weight 1/kappa
//   Unity : coth -> 1, i.e. weight lambda
enum class ThermalWeight { Auto, Exact, HighT, Unity };

inline constexpr double kZeroTProxyKappa = 50.0;

enum class EvalMethod { DirectQuadrature, ResidueHighT, ResidueOverdampedHighT, ZeroTAppendix };

struct QuadratureConfig {
    double rel_tol{1e-9};
    double abs_tol{1e-12};
    int max_subdivisions{4096};       // adaptive refinement budget (after splitting)
    bool oscillation_splitting{true}; // pre-split at cos(lambda*theta) zero crossings
    ThermalWeight weight{ThermalWeight::Auto};

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol <= 1e-3))
            throw Error(ErrorCode::InvalidParameter, "QuadratureConfig: rel_tol must be in (0, 1e-3]");
        if (max_subdivisions < 64)
            throw Error(ErrorCode::InvalidParameter, "QuadratureConfig: max_subdivisions must be >= 64");
        if (!(abs_tol >= 0.0))
            throw Error(ErrorCode::InvalidParameter, "QuadratureConfig: abs_tol must be >= 0");
    }

    ThermalWeight resolved_weight(double kappa) const {
        if (weight != ThermalWeight::Auto)
            return weight;
        return kappa >= kZeroTProxyKappa ? ThermalWeight::Unity : ThermalWeight::Exact;
    }
};

struct KernelSample {
    double theta{0.0};
    double I{0.0};
    double dI{0.0};
    double d2I{0.0};
    EvalMethod method{EvalMethod::DirectQuadrature};
    bool coth_unity_proxy{false}; // audit flag: Auto weight degraded coth -> 1
};

// ---------------------------------------------------------------------------
// Generic engine: simultaneous adaptive integration of up to 4 components
// sharing the same evaluation points. `edges` is an ascending breakpoint list
// spanning the integration range.

inline constexpr int kMaxComponents = 4;

using VectorIntegrand = std::function<void(double x, std::span<double> out)>;

struct VectorResult {
    std::array<double, kMaxComponents> value{};
    std::array<double, kMaxComponents> est_error{};
    int refinements{0};
    bool converged{true};
};

VectorResult integrate_adaptive(const VectorIntegrand& f, int n_components,
                                std::span<const double> edges, const QuadratureConfig& cfg);

// Scalar convenience over [a, b] with optional interior breakpoints.
specfun::EvaluationResult integrate(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureConfig& cfg,
                                    std::span<const double> interior = {});

// ---------------------------------------------------------------------------
// Paper kernels.

// I(theta) = 2 * int_0^lambda_c  [4 R lambda coth(kappa lambda) /
//            ((lambda^2-1)^2 + 4 R^2 lambda^2)] cos(lambda theta) / 2 dlambda
// evaluated as the even-integrand half-range form, plus its first two
// derivatives (differentiation under the integral: cos -> -lambda sin ->
// -lambda^2 cos).
KernelSample integrate_I(double theta, const BathParameters& params, const QuadratureConfig& cfg);

// A^(i)(theta), i in {1,2,3}: the (theta1,theta2) double integrals are done
// analytically (products of exponentials and trig), then the lambda integral
// with weight (R/2pi) lambda coth(kappa lambda) is done numerically. Overdamped
// parameters use the S -> iS substitution consistently, so results stay real
// (this flips the sign of the sinh-kernel integrals).
double integrate_A_direct(int i, double theta, const BathParameters& params,
                          const QuadratureConfig& cfg);

// d^2 I/dtheta^2 at theta = 0 (cutoff-regularized; grows like -4R ln lambda_c
// when the cutoff dominates). Always negative.
double second_derivative_I_at_zero(const BathParameters& params, const QuadratureConfig& cfg);

} // namespace qbm::quadrature
