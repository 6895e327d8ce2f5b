#pragma once
// shared skeleton of the forward sweep and its linearization

#include <cmath>
#include <string>
#include <utility>

#include "fdbeam/errors.hpp"
#include "fdbeam/sweep.hpp"

namespace fdbeam::detail {

inline const SectionCompliances& segment_compliance(const BeamElement& beam, int i) {
    return beam.compliances.size() == 1 ? beam.compliances[0] : beam.compliances[i - 1];
}

inline void check_inputs(const BeamElement& beam, const PartialResultants& res) {
    beam.validate();
    if (res.size() != beam.segments)
        throw ContractViolation("resultants were built for " + std::to_string(res.size()) + " segments, beam has " +
                                std::to_string(beam.segments));
}

// step(i, phim, p1, p2, comp, h) -> {dx, dz}; it records the midpoint state itself
template <class Step>
SweepRecord run_sweep(Formulation model, const GeneralizedForces& f_a, const GeneralizedCoordinates& r_a,
                      const BeamElement& beam, const PartialResultants& res, Step&& step) {
    check_inputs(beam, res);
    const int n = beam.segments;
    const double h = beam.dxi();
    const bool loaded = res.has_load();
    const double X = f_a.fx, Z = f_a.fz, Mab = f_a.m;

    SweepRecord rec;
    rec.model = model;
    rec.f_a = f_a;
    rec.r_a = r_a;
    rec.x.resize(n + 1);
    rec.z.resize(n + 1);
    rec.phi.resize(n + 1);
    rec.moment.resize(n + 1);
    rec.load_moment.resize(n + 1);
    rec.phi_mid.resize(n);

    RigidPoint p{r_a.x, r_a.z, r_a.phi, 0.0};
    if (beam.offset_left > 0.0) p = advance_rigid(p, beam.offset_left, loaded ? res.left_offset() : OffsetStation{});

    double x = p.x, z = p.z, phi = p.phi, mp = p.mp;
    double M = -Mab + X * (z - r_a.z) - Z * (x - r_a.x) + mp;
    rec.x[0] = x, rec.z[0] = z, rec.phi[0] = phi, rec.moment[0] = M, rec.load_moment[0] = mp;

    for (int i = 1; i <= n; ++i) {
        const SectionCompliances& cp = segment_compliance(beam, i);
        const double phim = phi + M * cp.c_bend * h / 2.0;
        double Px = 0.0, Pz = 0.0, m = 0.0;
        if (loaded) Px = res.px_half(i), Pz = res.pz_half(i), m = res.m_half(i);
        const auto [dx, dz] = step(i, phim, X + Px, Z + Pz, cp, h);
        x += dx;
        z += dz;
        mp = mp - m * h + Px * dz - Pz * dx;
        M = -Mab + X * (z - r_a.z) - Z * (x - r_a.x) + mp;
        phi = phim + M * cp.c_bend * h / 2.0;
        rec.phi_mid[i - 1] = phim;
        rec.x[i] = x, rec.z[i] = z, rec.phi[i] = phi, rec.moment[i] = M, rec.load_moment[i] = mp;
    }

    RigidPoint e{x, z, phi, mp};
    if (beam.offset_right > 0.0) e = advance_rigid(e, beam.offset_right, loaded ? res.right_offset() : OffsetStation{});
    rec.r_b = {e.x, e.z, e.phi};
    rec.mp_end = e.mp;
    return rec;
}

struct TangentState {
    double dX, dZ, dMab;
    double dx, dz, dphi, dmp, dM;
};

inline void rigid_tangent(TangentState& t, double d, double phi, const OffsetStation& st) {
    const double c = std::cos(phi), s = std::sin(phi);
    t.dx -= d * s * t.dphi;
    t.dz -= d * c * t.dphi;
    t.dmp -= (st.px * c - st.pz * s) * d * t.dphi;
}

// lin(i, t, dphim, comp, h) -> {d(dx), d(dz)}
template <class Lin>
std::vector<SeedResult> run_linearized(const SweepRecord& rec, const GeneralizedForces& f_a,
                                       const GeneralizedCoordinates& r_a, const BeamElement& beam,
                                       const PartialResultants& res, const std::vector<Seed>& seeds, Lin&& lin) {
    check_inputs(beam, res);
    const int n = beam.segments;
    if (!(rec.f_a == f_a) || !(rec.r_a == r_a) || static_cast<int>(rec.x.size()) != n + 1)
        throw ContractViolation("sweep record does not belong to these inputs");
    const double h = beam.dxi();
    const bool loaded = res.has_load();
    const double X = f_a.fx, Z = f_a.fz;

    std::vector<TangentState> ts(seeds.size());
    for (size_t k = 0; k < seeds.size(); ++k) {
        auto& t = ts[k];
        t = {seeds[k][0], seeds[k][1], seeds[k][2], 0.0, 0.0, seeds[k][3], 0.0, 0.0};
        if (beam.offset_left > 0.0)
            rigid_tangent(t, beam.offset_left, r_a.phi, loaded ? res.left_offset() : OffsetStation{});
        t.dM = -t.dMab + t.dX * (rec.z[0] - r_a.z) + X * t.dz - t.dZ * (rec.x[0] - r_a.x) - Z * t.dx + t.dmp;
    }

    for (int i = 1; i <= n; ++i) {
        const SectionCompliances& cp = segment_compliance(beam, i);
        double Px = 0.0, Pz = 0.0;
        if (loaded) Px = res.px_half(i), Pz = res.pz_half(i);
        const double zi = rec.z[i] - r_a.z, xi = rec.x[i] - r_a.x;
        for (auto& t : ts) {
            const double dphim = t.dphi + t.dM * cp.c_bend * h / 2.0;
            const auto [ddx, ddz] = lin(i, t, dphim, cp, h);
            t.dx += ddx;
            t.dz += ddz;
            t.dmp += Px * ddz - Pz * ddx;
            t.dM = -t.dMab + t.dX * zi + X * t.dz - t.dZ * xi - Z * t.dx + t.dmp;
            t.dphi = dphim + t.dM * cp.c_bend * h / 2.0;
        }
    }

    std::vector<SeedResult> out(seeds.size());
    for (size_t k = 0; k < seeds.size(); ++k) {
        auto& t = ts[k];
        if (beam.offset_right > 0.0)
            rigid_tangent(t, beam.offset_right, rec.phi[n], loaded ? res.right_offset() : OffsetStation{});
        out[k] = {t.dx, t.dz, t.dphi, t.dmp};
    }
    return out;
}

}  // namespace fdbeam::detail
