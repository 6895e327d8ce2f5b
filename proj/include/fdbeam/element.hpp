#pragma once

#include <array>
#include <vector>

#include "fdbeam/beam_core.hpp"
#include "fdbeam/dense_linalg.hpp"
#include "fdbeam/sweep.hpp"

namespace fdbeam {

struct ShootingOptions {
    double tol = 1e-10;  // weighted: sqrt((dx/L)^2 + (dz/L)^2 + dphi^2)
    int max_iter = 30;
};

struct ElementState {
    Formulation model = Formulation::reissner;
    GeneralizedCoordinates r_a, r_b;  // r_b is the target
    GeneralizedForces f_a, f_b;
    SweepRecord record;
    Mat3 jacobi{};                    // G = dg/df_a
    Vec3 phi_a_column{};              // dg/dphi_a
    std::array<double, 4> mp_sensitivities{};  // dMp(L)/d(X_ab, Z_ab, M_ab, phi_a)
    int iterations = 0;
    std::vector<double> residual_history;
};

using Mat6 = std::array<std::array<double, 6>, 6>;

struct ElementTangent {
    Mat6 k{};
};

double weighted_norm(double dx, double dz, double dphi, double length);

// sweep + linearization packed into a state, without iteration
ElementState evaluate_element(const GeneralizedForces& f_a, const GeneralizedCoordinates& r_a,
                              const BeamElement& beam, const PartialResultants& res, Formulation model);

ElementState end_forces(const GeneralizedCoordinates& r_a, const GeneralizedCoordinates& r_b,
                        const BeamElement& beam, const PartialResultants& res, Formulation model,
                        const GeneralizedForces& f_a_guess = {}, const ShootingOptions& opt = {});

ElementTangent tangent_stiffness(const ElementState& state, bool has_member_load);

}  // namespace fdbeam
