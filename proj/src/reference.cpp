#include "fdbeam/reference.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fdbeam/errors.hpp"

namespace fdbeam::reference {

using std::numbers::pi;

double timoshenko_deflection(TimoshenkoCase c, double load, double h_over_L, double gamma) {
    if (!(h_over_L > 0.0)) throw InputError("h/L must be positive");
    if (!(gamma > 0.0)) throw InputError("gamma must be positive");
    const double r = h_over_L * h_over_L / gamma;
    if (c == TimoshenkoCase::midspan_force) return load * (1.0 + r) / 48.0;
    return load * (1.0 + 4.0 * r) / 384.0;
}

namespace {

// 10-point Gauss-Legendre on [a, b]
template <class F>
double gauss10(F&& f, double a, double b) {
    static constexpr std::array<double, 5> x{0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                             0.8650633666889845, 0.9739065285171717};
    static constexpr std::array<double, 5> w{0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                             0.1494513491505806, 0.0666713443086881};
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += w[i] * (f(m - h * x[i]) + f(m + h * x[i]));
    return s * h;
}

FresnelValue fresnel_series(double x) {
    // C = sum (-1)^n x^(4n+1) / ((4n+1)(2n)!), S = sum (-1)^n x^(4n+3) / ((4n+3)(2n+1)!)
    const double x2 = x * x, x4 = x2 * x2;
    double c = 0.0, s = 0.0;
    double tc = x;       // x^(4n+1)/(2n)! with sign
    double ts = x * x2;  // x^(4n+3)/(2n+1)! with sign
    for (int n = 0; n < 60; ++n) {
        const double dc = tc / (4 * n + 1), ds = ts / (4 * n + 3);
        c += dc;
        s += ds;
        if (std::abs(dc) < 1e-18 && std::abs(ds) < 1e-18) break;
        tc *= -x4 / ((2.0 * n + 1) * (2.0 * n + 2));
        ts *= -x4 / ((2.0 * n + 2) * (2.0 * n + 3));
    }
    return {c, s};
}

}  // namespace

FresnelValue fresnel(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InputError("fresnel needs finite x >= 0");
    if (x <= 2.0) return fresnel_series(x);
    FresnelValue v = fresnel_series(2.0);
    // panels short enough that the phase t^2 advances at most ~0.5 rad per panel
    double a = 2.0;
    while (a < x) {
        const double b = std::min(x, a + 0.5 / (2.0 * a));
        v.c += gauss10([](double t) { return std::cos(t * t); }, a, b);
        v.s += gauss10([](double t) { return std::sin(t * t); }, a, b);
        a = b;
    }
    return v;
}

FresnelValue fresnel_normalized(double x) {
    const double k = std::sqrt(pi / 2.0);
    const auto v = fresnel(x * k);
    return {v.c / k, v.s / k};
}

CantileverMomentParams CantileverMomentParams::from_load(double m_hat) {
    if (!(m_hat >= 0.0)) throw InputError("moment load must be non-negative");
    return {std::sqrt(m_hat / pi)};
}

std::pair<double, double> cantilever_moment_shape(CantileverMomentParams p, double t) {
    if (!(p.mu >= 0.0)) throw InputError("mu must be non-negative");
    if (!(t >= 0.0 && t <= 1.0)) throw InputError("xi/L must lie in [0, 1]");
    const double mu = p.mu;
    if (mu < 1e-3) {
        // phi(s) = a (2s - s^2), a = pi mu^2 / 2; short expansion in a
        const double a = pi * mu * mu / 2.0;
        auto phi = [a](double s) { return a * (2 * s - s * s); };
        const double i2 = gauss10([&](double s) { return phi(s) * phi(s); }, 0.0, t);
        const double i1 = gauss10(phi, 0.0, t);
        const double i3 = gauss10([&](double s) { return std::pow(phi(s), 3); }, 0.0, t);
        return {t - 0.5 * i2, -(i1 - i3 / 6.0)};
    }
    const auto f1 = fresnel_normalized(mu);
    const auto f0 = fresnel_normalized(mu - mu * t);
    const double dc = f1.c - f0.c, ds = f1.s - f0.s;
    const double ph = pi * mu * mu / 2.0;
    const double c = std::cos(ph), s = std::sin(ph);
    // z follows from z_s = -int sin(phi)
    return {(c * dc + s * ds) / mu, (c * ds - s * dc) / mu};
}

void StabilityParams::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InputError("gamma must be positive");
    if (!(slenderness > 0.0) || !std::isfinite(slenderness)) throw InputError("slenderness must be positive");
}

double StabilityParams::buckling_length_factor(Support s) {
    switch (s) {
        case Support::clamped_one_end: return 2.0;
        case Support::simply_supported: return 1.0;
        case Support::clamped_both: return 0.5;
    }
    return 1.0;
}

StabilityParams StabilityParams::rectangular(double gamma, double h_over_L, Support s) {
    if (!(h_over_L > 0.0)) throw InputError("h/L must be positive");
    return {gamma, buckling_length_factor(s) * std::sqrt(12.0) / h_over_L, s};
}

std::optional<double> critical_compression(StabilityModel model, const StabilityParams& p) {
    p.validate();
    const double e = pi * pi / (p.slenderness * p.slenderness);  // Euler strain
    const double g = p.gamma;
    switch (model) {
        case StabilityModel::euler: return e;
        case StabilityModel::engesser: return e / (1.0 + e / g);
        case StabilityModel::kirchhoff:
        case StabilityModel::reissner: {
            // b eps^2 + eps - e = 0, smaller positive root in rationalized form
            const double b = model == StabilityModel::kirchhoff ? -1.0 : (1.0 - g) / g;
            const double disc = 1.0 + 4.0 * b * e;
            if (disc < 0.0) return std::nullopt;
            return 2.0 * e / (1.0 + std::sqrt(disc));
        }
        case StabilityModel::ziegler: {
            const double s2 = p.slenderness * p.slenderness;
            const double disc = 1.0 - 4.0 * pi * pi * g / (g * s2 + pi * pi);
            if (disc < 0.0) return std::nullopt;
            return 0.5 * (1.0 - std::sqrt(disc));
        }
    }
    return std::nullopt;
}

double compression_characteristic(StabilityModel model, const StabilityParams& p, double eps) {
    p.validate();
    const double s2 = p.slenderness * p.slenderness;
    const double e = pi * pi / s2;
    const double g = p.gamma;
    switch (model) {
        case StabilityModel::euler: return eps - e;
        case StabilityModel::engesser: return eps * (1.0 + e / g) - e;
        case StabilityModel::kirchhoff: return -eps * eps + eps - e;
        case StabilityModel::reissner: return (1.0 - g) / g * eps * eps + eps - e;
        case StabilityModel::ziegler: return eps * eps - eps + pi * pi * g / (g * s2 + pi * pi);
    }
    return NAN;
}

double tension_clamped_both_residual(const StabilityParams& p, double eps) {
    const double b = (1.0 - p.gamma) / p.gamma;
    const double s = p.slenderness;
    const double arg = s * std::sqrt((b * eps - 1.0) * eps);
    return std::sqrt(b - 1.0 / eps) * std::tan(arg) + s * (1.0 + eps);
}

namespace {

// root of b eps^2 - eps - c = 0 above 1/b
double tension_root(double b, double c) { return (1.0 + std::sqrt(1.0 + 4.0 * b * c)) / (2.0 * b); }

}  // namespace

std::optional<double> critical_tension_reissner(const StabilityParams& p) {
    p.validate();
    if (p.gamma >= 1.0) return std::nullopt;
    const double b = (1.0 - p.gamma) / p.gamma;
    const double s2 = p.slenderness * p.slenderness;
    switch (p.support) {
        case Support::simply_supported: return 1.0 / b;
        case Support::clamped_one_end: return tension_root(b, pi * pi / s2);
        case Support::clamped_both: {
            // tan argument hits pi/2 at eps1 and pi at eps_rt; F jumps at eps1
            const double eps1 = tension_root(b, pi * pi / (4.0 * s2));
            const double epsr = tension_root(b, pi * pi / s2);
            double lo = eps1 + 1e-9, hi = epsr - 1e-9;
            double flo = tension_clamped_both_residual(p, lo);
            if (tension_clamped_both_residual(p, hi) <= 0.0 || flo >= 0.0)
                throw NonConvergenceError("clamped-both tensile condition not bracketed", lo);
            while (hi - lo > 1e-6) {
                const double mid = 0.5 * (lo + hi);
                const double fm = tension_clamped_both_residual(p, mid);
                if (fm < 0.0)
                    lo = mid, flo = fm;
                else
                    hi = mid;
            }
            double x = 0.5 * (lo + hi);
            for (int k = 0; k < 50; ++k) {
                const double f = tension_clamped_both_residual(p, x);
                const double h = 1e-7 * x;
                const double df = (tension_clamped_both_residual(p, x + h) - tension_clamped_both_residual(p, x - h)) / (2 * h);
                if (f < 0.0) lo = x; else hi = x;
                double nx = x - f / df;
                if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
                const double dx = std::abs(nx - x);
                x = nx;
                if (dx < 1e-15 * x) break;
            }
            return x;
        }
    }
    return std::nullopt;
}

ModeValue tensile_buckling_mode(const StabilityParams& p, double t) {
    p.validate();
    if (!(t >= 0.0 && t <= 1.0)) throw InputError("xi/L must lie in [0, 1]");
    const auto eps = critical_tension_reissner(p);
    if (!eps) throw ContractViolation("no tensile bifurcation for gamma >= 1");
    const double b = (1.0 - p.gamma) / p.gamma;
    const double s = p.slenderness;
    switch (p.support) {
        case Support::simply_supported: return {1.0, 0.0};
        case Support::clamped_one_end: {
            const double d = std::sqrt(1.0 + 4.0 * b * pi * pi / (s * s));
            return {std::sin(pi * t / 2.0), (d - 1.0) / pi * (1.0 - std::cos(pi * t / 2.0))};
        }
        case Support::clamped_both: {
            const double e = *eps;
            const double kappa = s * std::sqrt((b * e - 1.0) * e);
            const double xt = 2.0 * t - 1.0;
            const double B = 1.0 / (1.0 - std::cos(kappa));
            const double dphi = B * (std::cos(kappa * xt) - std::cos(kappa));
            const double dz = B * ((b * e - 1.0) * (std::sin(kappa * xt) + std::sin(kappa)) / (2.0 * kappa) +
                                   (1.0 + e) * std::cos(kappa) * (1.0 + xt) / 2.0);
            return {dphi, dz};
        }
    }
    return {};
}

PostCriticalTension postcritical_tension_ss(double phi, double gamma) {
    if (!(std::abs(phi) < pi / 2)) throw InputError("|phi| must be below pi/2");
    if (!(gamma > 0.0 && gamma < 1.0)) throw InputError("post-critical branch needs 0 < gamma < 1");
    PostCriticalTension r;
    r.force_ratio = gamma / ((1.0 - gamma) * std::cos(phi));
    // u = |P| L / GA_s with GA_s = gamma EA
    r.length_ratio = r.force_ratio / gamma;
    r.check = r.length_ratio * gamma / r.force_ratio;
    return r;
}

}  // namespace fdbeam::reference
