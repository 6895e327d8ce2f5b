#include "fdbeam/element.hpp"

#include <cmath>
#include <string>

#include "fdbeam/errors.hpp"

namespace fdbeam {

double weighted_norm(double dx, double dz, double dphi, double length) {
    const double a = dx / length, b = dz / length;
    return std::sqrt(a * a + b * b + dphi * dphi);
}

namespace {

// Ziegler records must be converged tightly for the implicit derivative to be consistent
SweepRecord run(Formulation model, const GeneralizedForces& f, const GeneralizedCoordinates& r_a,
                const BeamElement& beam, const PartialResultants& res) {
    if (model == Formulation::ziegler) return ziegler::sweep(f, r_a, beam, res, ziegler::default_tolerance(f, beam, res));
    return reissner::sweep(f, r_a, beam, res);
}

void fill_tangent(ElementState& st, const BeamElement& beam, const PartialResultants& res) {
    const auto cols = sweep_linearized(st.record, st.f_a, st.r_a, beam, res, all_seeds());
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) st.jacobi[i][j] = cols[j][i];
    st.phi_a_column = {cols[3][0], cols[3][1], cols[3][2]};
    for (int j = 0; j < 4; ++j) st.mp_sensitivities[j] = cols[j][3];
}

}  // namespace

ElementState evaluate_element(const GeneralizedForces& f_a, const GeneralizedCoordinates& r_a,
                              const BeamElement& beam, const PartialResultants& res, Formulation model) {
    ElementState st;
    st.model = model;
    st.r_a = r_a;
    st.f_a = f_a;
    st.record = run(model, f_a, r_a, beam, res);
    st.r_b = st.record.r_b;
    st.f_b = right_end_forces(f_a, r_a, st.record.r_b, st.record.mp_end, res);
    fill_tangent(st, beam, res);
    return st;
}

ElementState end_forces(const GeneralizedCoordinates& r_a, const GeneralizedCoordinates& r_b,
                        const BeamElement& beam, const PartialResultants& res, Formulation model,
                        const GeneralizedForces& f_a_guess, const ShootingOptions& opt) {
    if (!(opt.tol > 0.0) || opt.max_iter < 1) throw ContractViolation("bad shooting options");
    if (!std::isfinite(f_a_guess.fx) || !std::isfinite(f_a_guess.fz) || !std::isfinite(f_a_guess.m))
        throw ContractViolation("non-finite initial guess");
    const double L = beam.length;
    GeneralizedForces f = f_a_guess;
    std::vector<double> hist;
    for (int it = 0; it <= opt.max_iter; ++it) {
        SweepRecord rec = run(model, f, r_a, beam, res);
        const Vec3 d{r_b.x - rec.r_b.x, r_b.z - rec.r_b.z, r_b.phi - rec.r_b.phi};
        const double norm = weighted_norm(d[0], d[1], d[2], L);
        hist.push_back(norm);
        if (!std::isfinite(norm)) break;

        ElementState st;
        st.model = model;
        st.r_a = r_a;
        st.r_b = r_b;
        st.f_a = f;
        st.record = std::move(rec);
        fill_tangent(st, beam, res);
        // a warm start can sit inside tol while the end displacements moved by less than tol;
        // take one correction anyway so the forces follow tiny increments
        if (norm <= opt.tol && (it > 0 || norm <= 1e-15)) {
            st.f_b = right_end_forces(f, r_a, st.record.r_b, st.record.mp_end, res);
            st.iterations = it;
            st.residual_history = std::move(hist);
            return st;
        }
        if (it == opt.max_iter) break;
        Vec3 df;
        try {
            df = solve_small(st.jacobi, d);
        } catch (const SingularMatrixError&) {
            throw BifurcationSignal("element Jacobi matrix is singular");
        }
        f.fx += df[0];
        f.fz += df[1];
        f.m += df[2];
    }
    throw NonConvergenceError("element shooting did not converge in " + std::to_string(opt.max_iter) + " iterations",
                              hist.empty() ? NAN : hist.back(), hist);
}

ElementTangent tangent_stiffness(const ElementState& st, bool has_member_load) {
    Mat3 gi;
    try {
        gi = inverse_small(st.jacobi);
    } catch (const SingularMatrixError&) {
        throw BifurcationSignal("element Jacobi matrix is singular");
    }
    const double X = st.f_a.fx, Z = st.f_a.fz;
    const auto& ra = st.r_a;
    const auto& rb = st.r_b;
    ElementTangent t;
    auto& k = t.k;
    for (int i = 0; i < 3; ++i) {
        k[i][0] = -gi[i][0];
        k[i][1] = -gi[i][1];
        for (int j = 0; j < 3; ++j) k[i][3 + j] = gi[i][j];
    }
    if (!has_member_load) {
        const Vec3 v{ra.z - rb.z, rb.x - ra.x, -1.0};
        const Vec3 add{Z, -X, 0.0};
        for (int i = 0; i < 3; ++i) k[i][2] = gi[i][0] * v[0] + gi[i][1] * v[1] + gi[i][2] * v[2] + add[i];
    } else {
        const auto& g = st.phi_a_column;
        for (int i = 0; i < 3; ++i) k[i][2] = -(gi[i][0] * g[0] + gi[i][1] * g[1] + gi[i][2] * g[2]);
    }
    for (int j = 0; j < 6; ++j) {
        k[3][j] = -k[0][j];
        k[4][j] = -k[1][j];
    }
    const double init[6] = {Z, -X, 0.0, -Z, X, 0.0};
    for (int j = 0; j < 6; ++j)
        k[5][j] = init[j] + k[0][j] * (rb.z - ra.z) + k[1][j] * (ra.x - rb.x) - k[2][j];
    if (has_member_load) {
        const auto& mp = st.mp_sensitivities;
        for (int j = 0; j < 6; ++j) k[5][j] += mp[0] * k[0][j] + mp[1] * k[1][j] + mp[2] * k[2][j];
        k[5][2] += mp[3];
    }
    return t;
}

}  // namespace fdbeam
