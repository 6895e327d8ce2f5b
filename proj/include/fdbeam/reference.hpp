#pragma once

#include <optional>
#include <utility>

namespace fdbeam::reference {

enum class TimoshenkoCase { midspan_force, clamped_uniform };

// w/L for the linear Timoshenko beam; load is F L^2/EI or f L^3/EI.
// gamma = GA_s/EA, rectangular section (EI = EA h^2/12).
double timoshenko_deflection(TimoshenkoCase c, double load, double h_over_L, double gamma = 1.0 / 3.0);

struct FresnelValue {
    double c = 0.0, s = 0.0;
};

// C(x) = int_0^x cos t^2 dt, S(x) = int_0^x sin t^2 dt
FresnelValue fresnel(double x);
// normalized form int_0^x cos(pi t^2 / 2) dt etc.
FresnelValue fresnel_normalized(double x);

struct CantileverMomentParams {
    double mu = 0.0;  // L sqrt(m / (pi EI))
    static CantileverMomentParams from_load(double m_times_L2_over_EI);
};

// (x_s/L, z_s/L) of the cantilever under uniform distributed moment
std::pair<double, double> cantilever_moment_shape(CantileverMomentParams p, double xi_over_L);

enum class Support { clamped_one_end, simply_supported, clamped_both };
enum class StabilityModel { euler, kirchhoff, reissner, ziegler, engesser };

struct StabilityParams {
    double gamma = 1.0 / 3.0;  // GA_s / EA
    double slenderness = 1.0;  // L_b / i
    Support support = Support::clamped_both;

    void validate() const;
    // buckling length over member length: 2, 1, 1/2
    static double buckling_length_factor(Support s);
    // rectangular section of depth h: i = h / sqrt(12)
    static StabilityParams rectangular(double gamma, double h_over_L, Support s);
};

// empty when the model has no bifurcation (Ziegler below the limit slenderness,
// Kirchhoff with s^2 < 4 pi^2, Reissner with gamma > 1 and no real root)
std::optional<double> critical_compression(StabilityModel model, const StabilityParams& p);

// residual of the defining equation at eps (zero at the critical strain)
double compression_characteristic(StabilityModel model, const StabilityParams& p, double eps);

// empty for gamma >= 1
std::optional<double> critical_tension_reissner(const StabilityParams& p);

// F(eps) of the clamped-both tensile condition
double tension_clamped_both_residual(const StabilityParams& p, double eps);

struct ModeValue {
    double dphi = 0.0;
    double dz = 0.0;  // over L
};

// mode at xi/L, amplitude constant 1
ModeValue tensile_buckling_mode(const StabilityParams& p, double xi_over_L);

struct PostCriticalTension {
    double force_ratio = 0.0;   // |P| / EA
    double length_ratio = 0.0;  // current length / L from u = |P| L / GA_s
    double check = 0.0;         // u GA_s / (|P| L), identically 1
};

PostCriticalTension postcritical_tension_ss(double phi, double gamma);

}  // namespace fdbeam::reference
