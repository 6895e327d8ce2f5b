#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "sweep_impl.hpp"

namespace fdbeam::ziegler {

namespace {

constexpr int kMaxNewton = 50;
constexpr double kEdge = 1e-9;  // keep bisection away from +-pi/2

struct ShearEval {
    double c, s, n, q, lambda, F, dF;
};

ShearEval eval_shear(double chi, double phim, double p1, double p2, double ga, double ca) {
    ShearEval e;
    const double th = phim - chi;
    e.c = std::cos(th);
    e.s = std::sin(th);
    e.n = -e.c * p1 + e.s * p2;
    e.q = -e.s * p1 - e.c * p2;
    e.lambda = 1 + e.n * ca;
    e.F = ga * chi - e.lambda * e.q;
    e.dF = ga + e.lambda * e.n - e.q * e.q * ca;
    return e;
}

double solve_chi(double phim, double p1, double p2, const SectionCompliances& cp, double guess, double tol) {
    const double ga = 1.0 / cp.c_shear, ca = cp.c_axial;
    const double lim = std::numbers::pi / 2;
    double chi = std::clamp(std::isfinite(guess) ? guess : 0.0, -lim + kEdge, lim - kEdge);
    for (int j = 0; j < kMaxNewton; ++j) {
        const auto e = eval_shear(chi, phim, p1, p2, ga, ca);
        if (std::abs(e.F) < tol) return chi;
        if (!(std::isfinite(e.dF) && e.dF != 0.0)) break;
        chi -= e.F / e.dF;
        if (!std::isfinite(chi) || std::abs(chi) >= lim) break;
    }
    // Newton gave up: bracket the root on the admissible interval
    double lo = -lim + kEdge, hi = lim - kEdge;
    double flo = eval_shear(lo, phim, p1, p2, ga, ca).F;
    const double fhi = eval_shear(hi, phim, p1, p2, ga, ca).F;
    if (std::signbit(flo) == std::signbit(fhi))
        throw NonConvergenceError("shear-angle iteration failed and F has no sign change on (-pi/2, pi/2)", chi);
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval_shear(mid, phim, p1, p2, ga, ca).F;
        if (std::abs(fm) < tol || hi - lo < 1e-16) return mid;
        if (std::signbit(fm) == std::signbit(flo))
            lo = mid, flo = fm;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double shear_angle_residual(double chi, double phi_mid, double p1, double p2, const SectionCompliances& c) {
    if (!(c.c_shear > 0.0)) throw ContractViolation("shear residual needs c_shear > 0");
    return eval_shear(chi, phi_mid, p1, p2, 1.0 / c.c_shear, c.c_axial).F;
}

double solve_shear_angle(double phi_mid, double p1, double p2, const SectionCompliances& c, double chi_guess,
                         double tol) {
    if (!(c.c_shear > 0.0)) throw ContractViolation("solve_shear_angle needs c_shear > 0 (Kirchhoff bypass)");
    if (!(tol > 0.0)) throw ContractViolation("tolerance must be positive");
    return solve_chi(phi_mid, p1, p2, c, chi_guess, tol);
}

double default_tolerance(const GeneralizedForces& f_a, const BeamElement& beam, const PartialResultants& res) {
    double ga = 0.0;
    for (const auto& c : beam.compliances)
        if (c.c_shear > 0.0) ga = std::max(ga, 1.0 / c.c_shear);
    const double px = res.has_load() ? std::abs(res.px_end()) : 0.0;
    const double pz = res.has_load() ? std::abs(res.pz_end()) : 0.0;
    const double scale = std::max({std::abs(f_a.fx) + px, std::abs(f_a.fz) + pz, ga});
    return 1e-12 * (scale > 0.0 ? scale : 1.0);
}

SweepRecord sweep(const GeneralizedForces& f_a, const GeneralizedCoordinates& r_a, const BeamElement& beam,
                  const PartialResultants& res, double tol) {
    if (!(tol > 0.0)) tol = default_tolerance(f_a, beam, res);
    std::vector<ZieglerMidpointState> mids(beam.segments > 0 ? beam.segments : 0);
    double chi_prev = 0.0;
    auto step = [&](int i, double phim, double p1, double p2, const SectionCompliances& cp, double h) {
        if (cp.c_shear == 0.0) {
            // Kirchhoff bypass, chi = 0; written to match the Reissner expressions bit for bit
            const double c = std::cos(phim), s = std::sin(phim);
            const double n = -c * p1 + s * p2;
            const double q = -s * p1 - c * p2;
            const double lambda = 1 + n * cp.c_axial;
            mids[i - 1] = {phim, 0.0, c, s, n, q, lambda};
            chi_prev = 0.0;
            return std::pair{c * lambda * h, -s * lambda * h};
        }
        const double chi = solve_chi(phim, p1, p2, cp, chi_prev, tol);
        const auto e = eval_shear(chi, phim, p1, p2, 1.0 / cp.c_shear, cp.c_axial);
        mids[i - 1] = {phim, chi, e.c, e.s, e.n, e.q, e.lambda};
        chi_prev = chi;
        return std::pair{e.c * e.lambda * h, -e.s * e.lambda * h};
    };
    auto rec = detail::run_sweep(Formulation::ziegler, f_a, r_a, beam, res, step);
    rec.ziegler = std::move(mids);
    return rec;
}

std::vector<SeedResult> sweep_linearized(const SweepRecord& rec, const GeneralizedForces& f_a,
                                         const GeneralizedCoordinates& r_a, const BeamElement& beam,
                                         const PartialResultants& res, const std::vector<Seed>& seeds) {
    if (rec.model != Formulation::ziegler || static_cast<int>(rec.ziegler.size()) != beam.segments)
        throw ContractViolation("not a Ziegler sweep record");
    auto lin = [&](int i, const detail::TangentState& t, double dphim, const SectionCompliances& cp, double h) {
        const auto& ms = rec.ziegler[i - 1];
        const double c = ms.c, s = ms.s, ca = cp.c_axial;
        const double lam = ms.lambda, nt = ms.n_tilde, qs = ms.q_star;
        double dchi = 0.0;
        if (cp.c_shear > 0.0) {
            const double ga = 1.0 / cp.c_shear;
            const double den = ga + lam * nt - qs * qs * ca;
            const double mag = ga + std::abs(lam * nt) + qs * qs * ca;
            if (!(std::abs(den) > 1e-14 * mag))
                throw SingularLinearization("shear-angle condition lost its slope at midpoint " + std::to_string(i));
            // note: the rotation term uses dphi at the midpoint, not at end a
            dchi = ((-c * qs * ca - s * lam) * t.dX + (s * qs * ca - c * lam) * t.dZ + (lam * nt - qs * qs * ca) * dphim) /
                   den;
        }
        const double dpsi = dphim - dchi;
        const double dn = -c * t.dX + s * t.dZ - qs * dpsi;
        const double dl = ca * dn;
        const double ddx = (c * dl - s * lam * dpsi) * h;
        const double ddz = (-s * dl - c * lam * dpsi) * h;
        return std::pair{ddx, ddz};
    };
    return detail::run_linearized(rec, f_a, r_a, beam, res, seeds, lin);
}

}  // namespace fdbeam::ziegler
