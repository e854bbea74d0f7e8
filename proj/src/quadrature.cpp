#include "qbm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>

namespace qbm::quadrature {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a{0.0}, b{0.0};
    std::array<double, kMaxComponents> value{};
    std::array<double, kMaxComponents> error{};
    double priority{0.0};
};

void gk15(const VectorIntegrand& f, int n, double a, double b, Segment& seg) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<double, kMaxComponents> fk{}, fg{}, buf{};
    std::span<double> out(buf.data(), static_cast<size_t>(n));

    for (int j = 0; j < 8; ++j) {
        const double dx = half * kXgk[j];
        f(mid - dx, out);
        std::array<double, kMaxComponents> sum{};
        for (int c = 0; c < n; ++c) sum[c] = buf[c];
        if (j != 7) {
            f(mid + dx, out);
            for (int c = 0; c < n; ++c) sum[c] += buf[c];
        }
        for (int c = 0; c < n; ++c) fk[c] += kWgk[j] * sum[c];
        if (j % 2 == 1) {
            for (int c = 0; c < n; ++c) fg[c] += kWg[j / 2] * sum[c];
        }
    }
    seg.a = a;
    seg.b = b;
    for (int c = 0; c < n; ++c) {
        seg.value[c] = fk[c] * half;
        seg.error[c] = std::abs((fk[c] - fg[c]) * half);
    }
}

double priority_of(const Segment& s, int n, const std::array<double, kMaxComponents>& scale) {
    double p = 0.0;
    for (int c = 0; c < n; ++c) p = std::max(p, s.error[c] / scale[c]);
    return p;
}

} // namespace

VectorResult integrate_adaptive(const VectorIntegrand& f, int n_components,
                                std::span<const double> edges, const QuadratureConfig& cfg) {
    cfg.validate();
    if (n_components < 1 || n_components > kMaxComponents)
        throw Error(ErrorCode::InvalidParameter, "integrate_adaptive: bad component count");
    if (edges.size() < 2)
        throw Error(ErrorCode::InvalidParameter, "integrate_adaptive: need at least two edges");

    std::vector<Segment> segs;
    segs.reserve(edges.size() + static_cast<size_t>(cfg.max_subdivisions));
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        Segment s;
        gk15(f, n_components, edges[i], edges[i + 1], s);
        segs.push_back(s);
    }

    const int n = n_components;
    std::array<double, kMaxComponents> total{}, toterr{}, scale{};
    auto recompute_totals = [&] {
        total.fill(0.0);
        toterr.fill(0.0);
        for (const Segment& s : segs)
            for (int c = 0; c < n; ++c) {
                total[c] += s.value[c];
                toterr[c] += s.error[c];
            }
        for (int c = 0; c < n; ++c)
            scale[c] = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total[c]));
    };
    recompute_totals();

    auto converged = [&] {
        for (int c = 0; c < n; ++c)
            if (toterr[c] > scale[c]) return false;
        return true;
    };

    // max-heap of segment indices by error priority
    auto cmp = [&](size_t i, size_t j) { return segs[i].priority < segs[j].priority; };
    std::priority_queue<size_t, std::vector<size_t>, decltype(cmp)> heap(cmp);
    for (size_t i = 0; i < segs.size(); ++i) {
        segs[i].priority = priority_of(segs[i], n, scale);
        heap.push(i);
    }

    int refinements = 0;
    while (!converged() && refinements < cfg.max_subdivisions) {
        if (heap.empty()) break;
        const size_t idx = heap.top();
        heap.pop();
        Segment worst = segs[idx];
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            continue; // interval at rounding resolution
        Segment left, right;
        gk15(f, n, worst.a, mid, left);
        gk15(f, n, mid, worst.b, right);
        for (int c = 0; c < n; ++c) {
            total[c] += left.value[c] + right.value[c] - worst.value[c];
            toterr[c] += left.error[c] + right.error[c] - worst.error[c];
            scale[c] = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total[c]));
        }
        left.priority = priority_of(left, n, scale);
        right.priority = priority_of(right, n, scale);
        segs[idx] = left;
        heap.push(idx);
        segs.push_back(right);
        heap.push(segs.size() - 1);
        ++refinements;
        if ((refinements & 1023) == 0)
            recompute_totals(); // refresh accumulated rounding
    }
    recompute_totals();

    VectorResult r;
    r.value = total;
    r.est_error = toterr;
    r.refinements = refinements;
    r.converged = converged();
    if (!r.converged)
        throw NonConvergenceError("integrate_adaptive: subdivision budget exhausted", total[0], toterr[0]);
    return r;
}

specfun::EvaluationResult integrate(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureConfig& cfg, std::span<const double> interior) {
    std::vector<double> edges{a};
    for (double x : interior)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    auto vf = [&f](double x, std::span<double> out) { out[0] = f(x); };
    const VectorResult r = integrate_adaptive(vf, 1, edges, cfg);
    return {r.value[0], r.est_error[0]};
}

namespace {

double thermal_factor(double lambda, double kappa, ThermalWeight w) {
    switch (w) {
        case ThermalWeight::HighT: return 1.0 / kappa;
        case ThermalWeight::Unity: return lambda;
        default: return specfun::coth_weight(lambda, kappa);
    }
}

// Breakpoints shared by all lambda integrands: the resonance at lambda ~ 1
// (width ~ R), the thermal scale 1/kappa, and decade markers for the slowly
// decaying tails.
std::vector<double> base_edges(const BathParameters& p, ThermalWeight w) {
    std::vector<double> e{0.0, p.lambda_c};
    auto add = [&](double x) {
        if (x > 0.0 && x < p.lambda_c) e.push_back(x);
    };
    const double width = std::max(p.R, 1e-3);
    for (double k : {10.0, 3.0, 1.0}) {
        add(1.0 - k * width);
        add(1.0 + k * width);
    }
    add(1.0);
    add(2.0 * p.R);
    if (w == ThermalWeight::Exact)
        add(1.0 / p.kappa);
    for (double d = 10.0; d < p.lambda_c; d *= 10.0)
        add(d);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

void add_oscillation_edges(std::vector<double>& edges, double theta, double lambda_c) {
    // split at the zero crossings of cos(lambda*theta): lambda_k = (k+1/2)pi/theta
    const double pi = std::numbers::pi;
    const double n = std::floor(lambda_c * theta / pi);
    if (n < 4.0 || n > 4e5)
        return;
    for (double k = 0.5; k * pi / theta < lambda_c; k += 1.0)
        edges.push_back(k * pi / theta);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

} // namespace

KernelSample integrate_I(double theta, const BathParameters& params, const QuadratureConfig& cfg) {
    params.validate();
    if (!(theta >= 0.0) || !std::isfinite(theta))
        throw Error(ErrorCode::InvalidParameter, "integrate_I: theta must be finite and >= 0");
    const ThermalWeight w = cfg.resolved_weight(params.kappa);
    const double R = params.R;

    auto f = [&](double lam, std::span<double> out) {
        const double l2 = lam * lam;
        const double d = (l2 - 1.0) * (l2 - 1.0) + 4.0 * R * R * l2;
        const double wl = 4.0 * R * thermal_factor(lam, params.kappa, w) / d;
        const double c = std::cos(lam * theta);
        const double s = std::sin(lam * theta);
        out[0] = wl * c;
        out[1] = -wl * lam * s;
        out[2] = -wl * l2 * c;
    };

    std::vector<double> edges = base_edges(params, w);
    if (cfg.oscillation_splitting && theta > 0.0)
        add_oscillation_edges(edges, theta, params.lambda_c);

    const VectorResult r = integrate_adaptive(f, 3, edges, cfg);
    KernelSample ks;
    ks.theta = theta;
    ks.I = r.value[0];
    ks.dI = r.value[1];
    ks.d2I = r.value[2];
    ks.method = EvalMethod::DirectQuadrature;
    ks.coth_unity_proxy = (cfg.weight == ThermalWeight::Auto && w == ThermalWeight::Unity);
    return ks;
}

namespace {

// int_0^theta e^{mu tau} cos/sin(a tau) dtau
double exp_cos_int(double mu, double a, double theta) {
    const double d = mu * mu + a * a;
    return (std::exp(mu * theta) * (mu * std::cos(a * theta) + a * std::sin(a * theta)) - mu) / d;
}
double exp_sin_int(double mu, double a, double theta) {
    const double d = mu * mu + a * a;
    return (std::exp(mu * theta) * (mu * std::sin(a * theta) - a * std::cos(a * theta)) + a) / d;
}

// Time-integrated kernels at fixed lambda. Underdamped uses sin/cos of S;
// overdamped the sinh-kernels (sign applied by the caller).
struct TimeKernels {
    double A1, A2, A3;
};

TimeKernels time_kernels_under(double lam, double theta, double R, double S) {
    const double Gc = 0.5 * (exp_sin_int(R, S + lam, theta) + exp_sin_int(R, S - lam, theta));
    const double Gs = 0.5 * (exp_cos_int(R, S - lam, theta) - exp_cos_int(R, S + lam, theta));
    const double Cc = 0.5 * (exp_cos_int(R, S + lam, theta) + exp_cos_int(R, S - lam, theta));
    const double Cs = 0.5 * (exp_sin_int(R, S + lam, theta) - exp_sin_int(R, S - lam, theta));
    const double sn = std::sin(S * theta), cs = std::cos(S * theta);
    const double Hc = sn * Cc - cs * Gc;
    const double Hs = sn * Cs - cs * Gs;
    const double em = std::exp(-R * theta);
    return {em * em * (Gc * Gc + Gs * Gs), 2.0 * em * (Gc * Hc + Gs * Hs), Hc * Hc + Hs * Hs};
}

TimeKernels time_kernels_over(double lam, double theta, double R, double St) {
    // sinh(St t) = (e^{St t} - e^{-St t})/2 folded into the exponential integrals
    const double Gc = 0.5 * (exp_cos_int(R + St, lam, theta) - exp_cos_int(R - St, lam, theta));
    const double Gs = 0.5 * (exp_sin_int(R + St, lam, theta) - exp_sin_int(R - St, lam, theta));
    const double Cc = 0.5 * (exp_cos_int(R + St, lam, theta) + exp_cos_int(R - St, lam, theta));
    const double Cs = 0.5 * (exp_sin_int(R + St, lam, theta) + exp_sin_int(R - St, lam, theta));
    const double sn = std::sinh(St * theta), cs = std::cosh(St * theta);
    const double Hc = sn * Cc - cs * Gc;
    const double Hs = sn * Cs - cs * Gs;
    const double em = std::exp(-R * theta);
    return {em * em * (Gc * Gc + Gs * Gs), 2.0 * em * (Gc * Hc + Gs * Hs), Hc * Hc + Hs * Hs};
}

} // namespace

double integrate_A_direct(int i, double theta, const BathParameters& params,
                          const QuadratureConfig& cfg) {
    params.validate();
    if (i < 1 || i > 3)
        throw Error(ErrorCode::InvalidParameter, "integrate_A_direct: kernel index must be 1, 2 or 3");
    if (!(theta >= 0.0) || !std::isfinite(theta))
        throw Error(ErrorCode::InvalidParameter, "integrate_A_direct: theta must be finite and >= 0");
    if (theta == 0.0)
        return 0.0;
    const Regime reg = classify(params);
    if (reg.kind == RegimeKind::Critical)
        throw Error(ErrorCode::RegimeGate, "integrate_A_direct: critical damping not supported");

    const ThermalWeight w = cfg.resolved_weight(params.kappa);
    const double R = params.R;
    const double S = reg.S;
    const bool over = reg.kind == RegimeKind::Overdamped;
    const double pref = R / (2.0 * std::numbers::pi);

    auto f = [&](double lam, std::span<double> out) {
        const TimeKernels tk = over ? time_kernels_over(lam, theta, R, S)
                                    : time_kernels_under(lam, theta, R, S);
        const double weight = pref * thermal_factor(lam, params.kappa, w);
        const double v = (i == 1) ? tk.A1 : (i == 2) ? tk.A2 : tk.A3;
        out[0] = weight * (over ? -v : v); // S -> iS flips the sin*sin pairs
    };

    std::vector<double> edges = base_edges(params, w);
    if (!over) {
        if (S > 0.0 && S < params.lambda_c) edges.push_back(S);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
    if (cfg.oscillation_splitting)
        add_oscillation_edges(edges, theta, params.lambda_c);

    return integrate_adaptive(f, 1, edges, cfg).value[0];
}

double second_derivative_I_at_zero(const BathParameters& params, const QuadratureConfig& cfg) {
    params.validate();
    const ThermalWeight w = cfg.resolved_weight(params.kappa);
    const double R = params.R;
    auto f = [&](double lam, std::span<double> out) {
        const double l2 = lam * lam;
        const double d = (l2 - 1.0) * (l2 - 1.0) + 4.0 * R * R * l2;
        out[0] = -4.0 * R * thermal_factor(lam, params.kappa, w) * l2 / d;
    };
    const std::vector<double> edges = base_edges(params, w);
    return integrate_adaptive(f, 1, edges, cfg).value[0];
}

} // namespace qbm::quadrature
