#include "qbm/kernels.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "qbm/specfun.hpp"

namespace qbm::kernels {

namespace {

constexpr double kPi = std::numbers::pi;

void gate_highT(const BathParameters& p, RegimeKind want, const char* who) {
    p.validate_for_asymptotics();
    if (p.kappa > 0.1)
        throw Error(ErrorCode::RegimeGate, std::string(who) + ": high-T residue form requires kappa <= 0.1");
    const RegimeKind kind = classify(p).kind;
    if (kind != want)
        throw Error(ErrorCode::RegimeGate, std::string(who) + ": wrong damping regime");
}

// Signed-theta residue evaluation (analytic continuation of the closed form;
// used by the near-zero interpolation nodes).
KernelSample residue_sample_signed(double theta, const BathParameters& p, bool over) {
    const Regime reg = classify(p);
    const double S = reg.S;
    const double R = p.R;
    const double c = kPi / (p.kappa * S);
    const double em = std::exp(-R * theta);
    KernelSample ks;
    ks.theta = theta;
    if (!over) {
        const double sn = std::sin(S * theta), cs = std::cos(S * theta);
        ks.I = c * em * (S * cs + R * sn);
        ks.dI = -c * em * sn;
        ks.d2I = c * em * (R * sn - S * cs);
        ks.method = EvalMethod::ResidueHighT;
    } else {
        const double sn = std::sinh(S * theta), cs = std::cosh(S * theta);
        ks.I = c * em * (S * cs + R * sn);
        ks.dI = -c * em * sn;
        ks.d2I = c * em * (R * sn - S * cs);
        ks.method = EvalMethod::ResidueOverdampedHighT;
    }
    return ks;
}

// I(0) and d2I/dtheta^2|0 for the quadrature path are reused by every
// coefficient evaluation at the same parameter set; cache by value.
struct ZeroKey {
    double R, kappa, lambda_c, rel_tol, abs_tol;
    int weight;
    bool operator<(const ZeroKey& o) const {
        return std::tie(R, kappa, lambda_c, rel_tol, abs_tol, weight) <
               std::tie(o.R, o.kappa, o.lambda_c, o.rel_tol, o.abs_tol, o.weight);
    }
};

struct ZeroSamples {
    double I0, d2I0;
};

ZeroSamples quadrature_zero_samples(const BathParameters& p, const QuadratureConfig& cfg) {
    static std::mutex mu;
    static std::map<ZeroKey, ZeroSamples> cache;
    const ZeroKey key{p.R, p.kappa, p.lambda_c, cfg.rel_tol, cfg.abs_tol,
                      static_cast<int>(cfg.resolved_weight(p.kappa))};
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    const KernelSample s0 = quadrature::integrate_I(0.0, p, cfg);
    const ZeroSamples z{s0.I, s0.d2I};
    std::lock_guard lock(mu);
    cache.emplace(key, z);
    return z;
}

struct SourceContext {
    KernelSource source;   // effective source (zero-T near-zero falls back to quadrature)
    double I0{0.0};
    double d2I0{0.0};
    bool over{false};
    Regime regime{};
};

KernelSample sample_signed(double theta, const BathParameters& p, const SourceContext& ctx) {
    switch (ctx.source.method) {
        case EvalMethod::ResidueHighT:
        case EvalMethod::ResidueOverdampedHighT:
            return residue_sample_signed(theta, p, ctx.over);
        case EvalMethod::ZeroTAppendix:
            return zeroT_I_strong(theta, p);
        default: {
            KernelSample ks = quadrature::integrate_I(std::abs(theta), p, ctx.source.quad);
            if (theta < 0.0) {
                ks.dI = -ks.dI; // I even, dI odd, d2I even in theta
                ks.theta = theta;
            }
            return ks;
        }
    }
}

// Shape-invariant coefficient assembly: underdamped uses (sin, cos); the
// overdamped path substitutes sinh/cosh with identical formula shape (the
// tilde convention). Valid at signed theta.
struct RawCoefficients {
    double A1t, A2t, A3t, A31t; // tilde (shape-invariant) values
    double K, den, brace, sn;
};

RawCoefficients assemble(double theta, const BathParameters& p, const InitialState& st,
                         const Regime& reg, const KernelSample& ks, double I0, double d2I0) {
    const double R = p.R;
    const double S = reg.S;
    const double z2 = st.zeta * st.zeta;
    const bool over = reg.kind == RegimeKind::Overdamped;
    const double sn = over ? std::sinh(S * theta) : std::sin(S * theta);
    const double cs = over ? std::cosh(S * theta) : std::cos(S * theta);
    const double em = std::exp(-R * theta);
    const double ep = std::exp(R * theta);
    const double It = ks.I, dIt = ks.dI, d2It = ks.d2I;

    RawCoefficients rc;
    rc.sn = sn;
    rc.A1t = ((S * S * em * em + (R * sn - S * cs) * (R * sn - S * cs)) * I0 -
              2.0 * S * em * (S * cs - R * sn) * It + 2.0 * S * em * sn * dIt - sn * sn * d2I0) /
             (8.0 * kPi);
    rc.A2t = (2.0 * (R * S * sn * std::sinh(R * theta) - S * S * cs * std::cosh(R * theta)) * I0 +
              (2.0 * S * S - sn * sn) * It - 2.0 * S * sn * cs * dIt + sn * sn * d2It) /
             (4.0 * kPi);
    rc.A3t = ((S * S * ep * ep + (R * sn + S * cs) * (R * sn + S * cs)) * I0 -
              2.0 * S * ep * (S * cs + R * sn) * It + 2.0 * S * ep * sn * dIt - sn * sn * d2I0) /
             (8.0 * kPi);
    rc.A31t = rc.A3t + sn * sn / (8.0 * z2);
    rc.K = S * cs + R * sn;
    rc.den = rc.K * rc.K * z2 + 8.0 * rc.A31t;
    rc.brace = rc.A1t + S * S * em * em * z2 / 8.0 -
               (S * em * rc.K * z2 - 4.0 * rc.A2t) * (S * em * rc.K * z2 - 4.0 * rc.A2t) /
                   (8.0 * rc.den);
    return rc;
}

double F_direct(double theta, const BathParameters& p, const InitialState& st, const Regime& reg,
                const SourceContext& ctx) {
    const KernelSample ks = sample_signed(theta, p, ctx);
    const RawCoefficients rc = assemble(theta, p, st, reg, ks, ctx.I0, ctx.d2I0);
    return rc.brace / (rc.sn * rc.sn);
}

// F near a zero of sn: degree-5 interpolation through six nodes at
// u = S*theta - n*pi = +-{1.5, 3, 4.5}e-3 (one zero only, at theta = 0, in the
// overdamped regime). The residue sources are evaluated at signed theta; the
// quadrature source uses the parity of the cos-transform.
double F_interpolated(double theta, int n_zero, const BathParameters& p, const InitialState& st,
                      const Regime& reg, const SourceContext& ctx) {
    const double S = reg.S;
    const double theta_star = n_zero * kPi / S;
    constexpr std::array<double, 6> us = {-4.5e-3, -3e-3, -1.5e-3, 1.5e-3, 3e-3, 4.5e-3};
    std::array<double, 6> Fs{};
    for (size_t i = 0; i < us.size(); ++i) {
        Fs[i] = F_direct(theta_star + us[i] / S, p, st, reg, ctx);
        if (!std::isfinite(Fs[i]))
            throw Error(ErrorCode::SingularTime,
                        "coefficients: regularized F evaluation failed near sin(S theta) = 0");
    }
    const double u0 = S * theta - n_zero * kPi;
    double val = 0.0;
    for (size_t i = 0; i < us.size(); ++i) {
        double Li = 1.0;
        for (size_t j = 0; j < us.size(); ++j)
            if (j != i) Li *= (u0 - us[j]) / (us[i] - us[j]);
        val += Li * Fs[i];
    }
    return val;
}

SourceContext make_context(const BathParameters& p, const KernelSource& source, const Regime& reg) {
    SourceContext ctx;
    ctx.source = source;
    ctx.regime = reg;
    ctx.over = reg.kind == RegimeKind::Overdamped;
    switch (source.method) {
        case EvalMethod::ResidueHighT:
        case EvalMethod::ResidueOverdampedHighT:
            ctx.I0 = kPi / p.kappa;
            ctx.d2I0 = -kPi / p.kappa;
            break;
        case EvalMethod::ZeroTAppendix: {
            // I(0) from the same pole approximation; d2I0 is divergent through
            // this path, so it always comes from the coth->1 quadrature.
            ctx.I0 = std::log(4.0 * p.R * p.R) / p.R;
            QuadratureConfig q = source.quad;
            q.weight = quadrature::ThermalWeight::Unity;
            ctx.d2I0 = quadrature::second_derivative_I_at_zero(p, q);
            break;
        }
        default: {
            const ZeroSamples z = quadrature_zero_samples(p, source.quad);
            ctx.I0 = z.I0;
            ctx.d2I0 = z.d2I0;
            break;
        }
    }
    return ctx;
}

} // namespace

KernelSample residue_I_highT(double theta, const BathParameters& params) {
    gate_highT(params, RegimeKind::Underdamped, "residue_I_highT");
    return residue_sample_signed(theta, params, false);
}

KernelSample residue_I_overdamped_highT(double theta, const BathParameters& params) {
    gate_highT(params, RegimeKind::Overdamped, "residue_I_overdamped_highT");
    return residue_sample_signed(theta, params, true);
}

KernelSample zeroT_I_strong(double theta, const BathParameters& params) {
    params.validate_for_asymptotics();
    if (classify(params).kind != RegimeKind::Overdamped)
        throw Error(ErrorCode::RegimeGate, "zeroT_I_strong: requires the overdamped regime");
    if (params.kappa < quadrature::kZeroTProxyKappa)
        throw Error(ErrorCode::RegimeGate, "zeroT_I_strong: requires the zero-T proxy (kappa >= 50)");
    if (!(theta > 0.0))
        throw Error(ErrorCode::DivergentAtOrigin,
                    "zeroT_I_strong: d2I/dtheta^2 diverges at theta = 0 through this path");
    const double R = params.R;
    const double alpha = 1.0 / (2.0 * R); // ~ R - S
    const double beta = 2.0 * R;          // ~ R + S
    using specfun::e1_scaled;
    using specfun::ei_scaled;
    const double a = alpha * theta, b = beta * theta;
    KernelSample ks;
    ks.theta = theta;
    ks.method = EvalMethod::ZeroTAppendix;
    ks.I = (e1_scaled(a) - e1_scaled(b) + ei_scaled(b) - ei_scaled(a)) / (2.0 * R);
    ks.dI = (alpha * (e1_scaled(a) + ei_scaled(a)) - beta * (e1_scaled(b) + ei_scaled(b))) / (2.0 * R);
    ks.d2I = (alpha * alpha * (e1_scaled(a) - ei_scaled(a)) -
              beta * beta * (e1_scaled(b) - ei_scaled(b))) /
             (2.0 * R);
    return ks;
}

KernelSample kernel_sample(double theta, const BathParameters& params, const KernelSource& source) {
    if (!(theta >= 0.0) || !std::isfinite(theta))
        throw Error(ErrorCode::InvalidParameter, "kernel_sample: theta must be finite and >= 0");
    switch (source.method) {
        case EvalMethod::ResidueHighT: return residue_I_highT(theta, params);
        case EvalMethod::ResidueOverdampedHighT: return residue_I_overdamped_highT(theta, params);
        case EvalMethod::ZeroTAppendix: return zeroT_I_strong(theta, params);
        default: return quadrature::integrate_I(theta, params, source.quad);
    }
}

CoefficientSet coefficients(double theta, const BathParameters& params, const InitialState& state,
                            const KernelSource& source) {
    params.validate();
    state.validate();
    if (!(theta >= 0.0) || !std::isfinite(theta))
        throw Error(ErrorCode::InvalidParameter, "coefficients: theta must be finite and >= 0");
    const Regime reg = classify(params);
    if (reg.kind == RegimeKind::Critical)
        throw Error(ErrorCode::RegimeGate, "coefficients: critical damping has S = 0");

    SourceContext ctx = make_context(params, source, reg);
    const bool over = ctx.over;

    // Inside the singular window the zero-T closed form cannot provide the
    // interpolation nodes (not continuable to theta < 0); use the matching
    // coth->1 quadrature there.
    const double u = reg.S * theta;
    const double sn_abs = over ? std::abs(std::sinh(u)) : std::abs(std::sin(u));
    const bool near_zero = sn_abs < kSingularWindow;
    SourceContext fctx = ctx;
    if (near_zero && source.method == EvalMethod::ZeroTAppendix) {
        fctx.source.method = EvalMethod::DirectQuadrature;
        fctx.source.quad.weight = quadrature::ThermalWeight::Unity;
        const ZeroSamples z = quadrature_zero_samples(params, fctx.source.quad);
        fctx.I0 = z.I0;
        fctx.d2I0 = z.d2I0;
    }

    const SourceContext& actx = (near_zero && source.method == EvalMethod::ZeroTAppendix) ? fctx : ctx;
    const KernelSample ks = sample_signed(theta, params, actx);
    const RawCoefficients rc = assemble(theta, params, state, reg, ks, actx.I0, actx.d2I0);

    CoefficientSet out;
    out.theta = theta;
    out.regime = reg;
    const double sign = over ? -1.0 : 1.0; // substituted convention for the A's
    out.A1 = sign * rc.A1t;
    out.A2 = sign * rc.A2t;
    out.A3 = sign * rc.A3t;
    out.A3_1 = sign * rc.A31t;
    out.K = rc.K;
    out.P = 0.5 * reg.S * reg.S * std::exp(2.0 * params.R * theta) / rc.den;

    if (!near_zero) {
        out.F = rc.brace / (rc.sn * rc.sn);
    } else {
        const int n_zero = over ? 0 : static_cast<int>(std::lround(u / kPi));
        out.F = F_interpolated(theta, n_zero, params, state, reg, fctx);
    }
    return out;
}

double F_asymptote(const BathParameters& params, const InitialState& state,
                   const QuadratureConfig& cfg) {
    params.validate();
    state.validate();
    const double d2I0 = quadrature::second_derivative_I_at_zero(params, cfg);
    return -d2I0 / (8.0 * kPi);
}

} // namespace qbm::kernels
