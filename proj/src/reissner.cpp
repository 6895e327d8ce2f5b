#include <cmath>
#include <utility>

#include "sweep_impl.hpp"

namespace fdbeam {

RigidPoint advance_rigid(const RigidPoint& p, double d, const OffsetStation& load) {
    if (d < 0.0) throw InputError("negative rigid offset");
    if (d == 0.0) return p;
    const double c = std::cos(p.phi), s = std::sin(p.phi);
    RigidPoint q = p;
    q.x += d * c;
    q.z -= d * s;
    // same as the flexible Mp update with dx = d cos, dz = -d sin
    q.mp -= (load.m + load.px * s + load.pz * c) * d;
    return q;
}

GeneralizedForces right_end_forces(const GeneralizedForces& f_a, const GeneralizedCoordinates& r_a,
                                   const GeneralizedCoordinates& r_b, double mp_end,
                                   const PartialResultants& res) {
    const double Px = res.has_load() ? res.px_end() : 0.0;
    const double Pz = res.has_load() ? res.pz_end() : 0.0;
    return {-f_a.fx - Px, -f_a.fz - Pz,
            -f_a.m + f_a.fx * (r_b.z - r_a.z) - f_a.fz * (r_b.x - r_a.x) + mp_end};
}

namespace reissner {

SweepRecord sweep(const GeneralizedForces& f_a, const GeneralizedCoordinates& r_a, const BeamElement& beam,
                  const PartialResultants& res) {
    std::vector<ReissnerMidpointState> mids(beam.segments > 0 ? beam.segments : 0);
    auto step = [&](int i, double phim, double p1, double p2, const SectionCompliances& cp, double h) {
        const double c = std::cos(phim), s = std::sin(phim);
        const double n = -c * p1 + s * p2;
        const double q = -s * p1 - c * p2;
        const double eps = n * cp.c_axial;
        const double gam = q * cp.c_shear;
        mids[i - 1] = {phim, c, s, n, q, eps, gam};
        return std::pair{(c * (1 + eps) + s * gam) * h, (c * gam - s * (1 + eps)) * h};
    };
    auto rec = detail::run_sweep(Formulation::reissner, f_a, r_a, beam, res, step);
    rec.reissner = std::move(mids);
    return rec;
}

std::vector<SeedResult> sweep_linearized(const SweepRecord& rec, const GeneralizedForces& f_a,
                                         const GeneralizedCoordinates& r_a, const BeamElement& beam,
                                         const PartialResultants& res, const std::vector<Seed>& seeds) {
    if (rec.model != Formulation::reissner || static_cast<int>(rec.reissner.size()) != beam.segments)
        throw ContractViolation("not a Reissner sweep record");
    auto lin = [&](int i, const detail::TangentState& t, double dphim, const SectionCompliances& cp, double h) {
        const auto& ms = rec.reissner[i - 1];
        const double c = ms.c, s = ms.s;
        const double dn = -c * t.dX + s * t.dZ - ms.q * dphim;
        const double dq = -s * t.dX - c * t.dZ + ms.n * dphim;
        const double de = cp.c_axial * dn;
        const double dg = cp.c_shear * dq;
        const double ddx = (c * de + s * dg - (s * (1 + ms.eps) - c * ms.gamma) * dphim) * h;
        const double ddz = (c * dg - s * de - (s * ms.gamma + c * (1 + ms.eps)) * dphim) * h;
        return std::pair{ddx, ddz};
    };
    return detail::run_linearized(rec, f_a, r_a, beam, res, seeds, lin);
}

}  // namespace reissner

SweepRecord sweep(Formulation model, const GeneralizedForces& f_a, const GeneralizedCoordinates& r_a,
                  const BeamElement& beam, const PartialResultants& res) {
    return model == Formulation::reissner ? reissner::sweep(f_a, r_a, beam, res)
                                          : ziegler::sweep(f_a, r_a, beam, res);
}

std::vector<SeedResult> sweep_linearized(const SweepRecord& rec, const GeneralizedForces& f_a,
                                         const GeneralizedCoordinates& r_a, const BeamElement& beam,
                                         const PartialResultants& res, const std::vector<Seed>& seeds) {
    return rec.model == Formulation::reissner ? reissner::sweep_linearized(rec, f_a, r_a, beam, res, seeds)
                                              : ziegler::sweep_linearized(rec, f_a, r_a, beam, res, seeds);
}

}  // namespace fdbeam
