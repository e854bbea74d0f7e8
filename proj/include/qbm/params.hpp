// params.hpp — dimensionless parameter space and damping-regime classification
//
// Everything downstream works in the dimensionless set
//   R = gamma/omega0, S = omega/omega0, kappa = hbar*omega0/(2 kB T),
//   theta = omega0*t, lambda = nu/omega0, lambda_c = Omega/omega0,
//   zeta = sigma/sigma0, q = (x+y)/(2 sigma0), r = (x-y)/sigma0.

#pragma once

#include <cmath>

#include "qbm/errors.hpp"

namespace qbm {

enum class RegimeKind { Underdamped, Overdamped, Critical };

struct Regime {
    RegimeKind kind{RegimeKind::Underdamped};
    double S{1.0}; // |omega|/omega0; sqrt(1-R^2) underdamped, sqrt(R^2-1) overdamped
};

struct BathParameters {
    double R{0.1};           // damping ratio gamma/omega0
    double kappa{0.1};       // inverse temperature hbar*omega0/(2 kB T)
    double lambda_c{1e3};    // spectral cutoff Omega/omega0

    void validate() const {
        if (!(std::isfinite(R) && R > 0.0))
            throw Error(ErrorCode::InvalidParameter, "BathParameters: R must be finite and > 0");
        if (!(std::isfinite(kappa) && kappa > 0.0))
            throw Error(ErrorCode::InvalidParameter, "BathParameters: kappa must be finite and > 0");
        if (!(std::isfinite(lambda_c) && lambda_c > 0.0))
            throw Error(ErrorCode::InvalidParameter, "BathParameters: lambda_c must be finite and > 0");
    }

    // Asymptotic (residue / zero-T) formulas assume the cutoff dominates every
    // other frequency scale.
    void validate_for_asymptotics() const {
        validate();
        const double needed = std::max({1.0, R, 1.0 / kappa});
        if (!(lambda_c > needed))
            throw Error(ErrorCode::InvalidParameter,
                        "BathParameters: lambda_c must exceed max(1, R, 1/kappa) for asymptotic formulas");
    }
};

struct InitialState {
    double zeta{1.0}; // squeezing sigma/sigma0
    double p{0.0};    // dimensionless momentum p*sigma0/hbar

    void validate() const {
        if (!(std::isfinite(zeta) && zeta > 0.0))
            throw Error(ErrorCode::InvalidParameter, "InitialState: zeta must be finite and > 0");
        if (!std::isfinite(p))
            throw Error(ErrorCode::InvalidParameter, "InitialState: p must be finite");
    }
};

struct OffDiagonalDistance {
    double r{1.0}; // (x-y)/sigma0; r = 0 is the principal diagonal

    void validate() const {
        if (!std::isfinite(r))
            throw Error(ErrorCode::InvalidParameter, "OffDiagonalDistance: r must be finite");
    }
};

// |R-1| <= this is treated as critically damped (S = 0); asymptotic operations
// reject it instead of dividing by S.
inline constexpr double kCriticalTolerance = 1e-9;

Regime classify(const BathParameters& params);

// theta_R in units of 1/omega0: 1/R (extremely underdamped, R < 0.5) or
// 2R (extremely overdamped, R > 2). Intermediate R has no formula in between.
double relaxation_time(const BathParameters& params);

} // namespace qbm
