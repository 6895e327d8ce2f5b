#include <cmath>
#include <limits>
#include <optional>

#include "doctest.h"
#include "fdbeam/element.hpp"
#include "fdbeam/errors.hpp"
#include "support.hpp"

using namespace fdbeam;
using testing_support::Rng;

namespace {

std::array<double, 6> forces(const ElementState& s) {
    return {s.f_a.fx, s.f_a.fz, s.f_a.m, s.f_b.fx, s.f_b.fz, s.f_b.m};
}

// random beam plus a converged state, or nothing when the shooting did not take
struct Sample {
    BeamElement beam;
    PartialResultants res;
    Formulation model;
    ElementState state;
};

std::optional<Sample> draw(Rng& r, bool loaded) {
    Sample s;
    const double L = r.uniform(0.5, 2.0);
    s.beam = BeamElement(L, r.integer(4, 30), {r.uniform(1e-4, 1e-2), r.uniform(1e-4, 3e-2), r.uniform(0.5, 2.0)});
    if (r.uniform(0, 1) < 0.3) s.beam.offset_left = 0.1 * L;
    DistributedLoad load;
    if (loaded) {
        load.pz = LoadDensity::constant(r.uniform(-3, 3));
        load.px = LoadDensity::function([a = r.uniform(-1, 1)](double x) { return a * x; });
        load.m = LoadDensity::constant(r.uniform(-0.5, 0.5));
    }
    s.res = precompute_partial_resultants(load, s.beam);
    s.model = r.uniform(0, 1) < 0.5 ? Formulation::reissner : Formulation::ziegler;
    const GeneralizedCoordinates ra{r.uniform(-1, 1), r.uniform(-1, 1), r.uniform(-0.3, 0.3)};
    // target from a sweep with known forces
    const GeneralizedForces f{r.uniform(-1, 1), r.uniform(-2, 2), r.uniform(-1, 1)};
    const auto rb = sweep(s.model, f, ra, s.beam, s.res).r_b;
    try {
        s.state = end_forces(ra, rb, s.beam, s.res, s.model, {}, {1e-13, 60});
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }
    return s;
}

double tangent_fd_error(const Sample& s) {
    const auto t = tangent_stiffness(s.state, s.res.has_load());
    const double h = 1e-6 * s.beam.length;
    double kmax = 0.0, dmax = 0.0;
    for (int j = 0; j < 6; ++j) {
        auto run = [&](double sgn) {
            auto ra = s.state.r_a, rb = s.state.r_b;
            double* c[6] = {&ra.x, &ra.z, &ra.phi, &rb.x, &rb.z, &rb.phi};
            *c[j] += sgn * h;
            return forces(end_forces(ra, rb, s.beam, s.res, s.model, s.state.f_a, {1e-14, 60}));
        };
        const auto up = run(1), dn = run(-1);
        for (int i = 0; i < 6; ++i) {
            kmax = std::max(kmax, std::abs(t.k[i][j]));
            dmax = std::max(dmax, std::abs((up[i] - dn[i]) / (2 * h) - t.k[i][j]));
        }
    }
    return dmax / kmax;
}

}  // namespace

TEST_CASE("shooting recovers the forces that produced the target") {
    BeamElement beam(1.0, 20, {1e-3, 3e-3, 1.0});
    const auto res = precompute_partial_resultants({}, beam);
    const GeneralizedForces f{0.4, -1.5, 0.6};
    for (auto m : {Formulation::reissner, Formulation::ziegler}) {
        const auto rb = sweep(m, f, {}, beam, res).r_b;
        const auto st = end_forces({}, rb, beam, res, m);
        CHECK(st.f_a.fx == doctest::Approx(f.fx).epsilon(1e-8));
        CHECK(st.f_a.fz == doctest::Approx(f.fz).epsilon(1e-8));
        CHECK(st.f_a.m == doctest::Approx(f.m).epsilon(1e-8));
        CHECK(st.iterations > 0);
        // whole-element equilibrium
        CHECK(st.f_a.fx + st.f_b.fx == doctest::Approx(0.0).scale(1.0));
        CHECK(st.f_a.fz + st.f_b.fz == doctest::Approx(0.0).scale(1.0));
    }
}

TEST_CASE("guided cantilever reproduces the Timoshenko stiffness") {
    const double gas = 200.0, L = 1.0, w = 1e-6;
    BeamElement beam(L, 400, SectionCompliances::from_stiffness(1e6, gas, 1.0));
    const auto res = precompute_partial_resultants({}, beam);
    const auto st = end_forces({}, {L, w, 0.0}, beam, res, Formulation::reissner);
    const double k = 12.0 / (L * L * L) / (1.0 + 12.0 / (gas * L * L));
    CHECK(std::abs(st.f_a.fz) == doctest::Approx(k * w).epsilon(1e-4));
    CHECK(std::abs(st.f_a.m) == doctest::Approx(k * w * L / 2).epsilon(1e-4));
}

TEST_CASE("warm start inside tolerance still takes a correction") {
    BeamElement beam(1.0, 10, {1e-3, 3e-3, 1.0});
    const auto res = precompute_partial_resultants({}, beam);
    const auto rb = reissner::sweep({0.2, -0.8, 0.3}, {}, beam, res).r_b;
    const auto a = end_forces({}, rb, beam, res, Formulation::reissner);
    const auto b = end_forces({}, rb, beam, res, Formulation::reissner, a.f_a);
    CHECK(b.iterations >= 1);
    CHECK(b.f_a.fz == doctest::Approx(a.f_a.fz).epsilon(1e-10));
}

TEST_CASE("unreachable targets are reported") {
    BeamElement rigid(1.0, 4, {0.0, 0.0, 1.0});
    const auto res = precompute_partial_resultants({}, rigid);
    CHECK_THROWS(end_forces({}, {2.0, 0.0, 0.0}, rigid, res, Formulation::reissner, {}, {1e-10, 10}));
}

TEST_CASE("element tangent matches finite differences of the end forces") {
    Rng r(31337);
    int done = 0, tries = 0;
    double worst = 0.0;
    while (done < 20 && tries < 200) {
        ++tries;
        const auto s = draw(r, done % 2 == 1);
        if (!s) continue;
        worst = std::max(worst, tangent_fd_error(*s));
        ++done;
    }
    CHECK(done == 20);
    CHECK(worst <= 1e-5);
}

TEST_CASE("straight-state tangent of a Kirchhoff element") {
    // classic 6x6 of an inextensible-shear, extensible bar at zero load
    const double ea = 1e3, L = 2.0;
    BeamElement beam(L, 200, SectionCompliances::from_stiffness(ea, std::numeric_limits<double>::infinity(), 1.0));
    const auto res = precompute_partial_resultants({}, beam);
    const auto st = end_forces({}, {L, 0.0, 0.0}, beam, res, Formulation::reissner);
    const auto k = tangent_stiffness(st, false).k;
    CHECK(std::abs(k[0][0]) == doctest::Approx(ea / L).epsilon(1e-9));
    CHECK(std::abs(k[1][1]) == doctest::Approx(12.0 / (L * L * L)).epsilon(1e-4));
    CHECK(std::abs(k[2][2]) == doctest::Approx(4.0 / L).epsilon(1e-4));
    CHECK(std::abs(k[2][5]) == doctest::Approx(2.0 / L).epsilon(1e-4));
}
