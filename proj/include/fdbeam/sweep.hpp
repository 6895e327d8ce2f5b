#pragma once

#include <array>
#include <vector>

#include "fdbeam/beam_core.hpp"

namespace fdbeam {

enum class Formulation { reissner, ziegler };

struct ReissnerMidpointState {
    double phi_mid = 0.0;
    double c = 1.0, s = 0.0;  // cos / sin of phi_mid
    double n = 0.0;           // normal to section
    double q = 0.0;           // parallel to section
    double eps = 0.0;
    double gamma = 0.0;
};

struct ZieglerMidpointState {
    double phi_mid = 0.0;
    double chi = 0.0;
    double c = 1.0, s = 0.0;  // cos / sin of (phi_mid - chi)
    double n_tilde = 0.0;
    double q_star = 0.0;
    double lambda = 1.0;
};

// Start point of the rigid step (or of the flexible part).
struct RigidPoint {
    double x = 0.0, z = 0.0, phi = 0.0, mp = 0.0;
};

struct SweepRecord {
    Formulation model = Formulation::reissner;
    GeneralizedForces f_a;
    GeneralizedCoordinates r_a;
    // grid points 0..N of the flexible part
    std::vector<double> x, z, phi, moment, load_moment;
    std::vector<double> phi_mid;  // midpoints 1..N stored at index i-1
    std::vector<ReissnerMidpointState> reissner;
    std::vector<ZieglerMidpointState> ziegler;
    GeneralizedCoordinates r_b;
    double mp_end = 0.0;
};

// one tangent seed / result: (dX_ab, dZ_ab, dM_ab, dphi_a) -> (dx_b, dz_b, dphi_b, dMp(L))
using Seed = std::array<double, 4>;
using SeedResult = std::array<double, 4>;

inline std::vector<Seed> all_seeds() {
    return {Seed{1, 0, 0, 0}, Seed{0, 1, 0, 0}, Seed{0, 0, 1, 0}, Seed{0, 0, 0, 1}};
}

// Rigid step over length d: x += d cos(phi), z -= d sin(phi), Mp from the station loads.
RigidPoint advance_rigid(const RigidPoint& p, double d, const OffsetStation& load);

// whole-beam equilibrium for the right-end forces
GeneralizedForces right_end_forces(const GeneralizedForces& f_a, const GeneralizedCoordinates& r_a,
                                   const GeneralizedCoordinates& r_b, double mp_end,
                                   const PartialResultants& res);

namespace reissner {

SweepRecord sweep(const GeneralizedForces& f_a, const GeneralizedCoordinates& r_a, const BeamElement& beam,
                  const PartialResultants& res);

std::vector<SeedResult> sweep_linearized(const SweepRecord& rec, const GeneralizedForces& f_a,
                                         const GeneralizedCoordinates& r_a, const BeamElement& beam,
                                         const PartialResultants& res, const std::vector<Seed>& seeds);

}  // namespace reissner

namespace ziegler {

// default force-scaled tolerance for the shear-angle iteration
double default_tolerance(const GeneralizedForces& f_a, const BeamElement& beam, const PartialResultants& res);

// root of F(chi) = GA_s chi - (1 + f_N/EA) f_Q on (-pi/2, pi/2); needs c_shear > 0
double solve_shear_angle(double phi_mid, double p1, double p2, const SectionCompliances& c, double chi_guess,
                         double tol);

// F(chi) in force units, exposed for oracles
double shear_angle_residual(double chi, double phi_mid, double p1, double p2, const SectionCompliances& c);

// tol <= 0 selects default_tolerance
SweepRecord sweep(const GeneralizedForces& f_a, const GeneralizedCoordinates& r_a, const BeamElement& beam,
                  const PartialResultants& res, double tol = 0.0);

std::vector<SeedResult> sweep_linearized(const SweepRecord& rec, const GeneralizedForces& f_a,
                                         const GeneralizedCoordinates& r_a, const BeamElement& beam,
                                         const PartialResultants& res, const std::vector<Seed>& seeds);

}  // namespace ziegler

SweepRecord sweep(Formulation model, const GeneralizedForces& f_a, const GeneralizedCoordinates& r_a,
                  const BeamElement& beam, const PartialResultants& res);
std::vector<SeedResult> sweep_linearized(const SweepRecord& rec, const GeneralizedForces& f_a,
                                         const GeneralizedCoordinates& r_a, const BeamElement& beam,
                                         const PartialResultants& res, const std::vector<Seed>& seeds);

}  // namespace fdbeam
