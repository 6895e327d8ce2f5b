#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fdbeam/errors.hpp"
#include "fdbeam/sweep.hpp"
#include "support.hpp"

using namespace fdbeam;
using testing_support::Rng;

namespace {

// written out independently of the library
double shear_condition(double chi, double phim, double p1, double p2, double ca, double cs) {
    const double th = phim - chi;
    const double n = -std::cos(th) * p1 + std::sin(th) * p2;
    const double q = -std::sin(th) * p1 - std::cos(th) * p2;
    return chi / cs - (1 + n * ca) * q;
}

double bisect_chi(double phim, double p1, double p2, double ca, double cs) {
    double lo = -std::numbers::pi / 2 + 1e-9, hi = std::numbers::pi / 2 - 1e-9;
    double flo = shear_condition(lo, phim, p1, p2, ca, cs);
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = shear_condition(mid, phim, p1, p2, ca, cs);
        if ((fm < 0) == (flo < 0))
            lo = mid, flo = fm;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("shear angle agrees with a bisection oracle") {
    Rng r(99);
    for (int k = 0; k < 50; ++k) {
        const SectionCompliances c{r.uniform(1e-4, 1e-2), r.uniform(1e-3, 0.3), 1.0};
        const double phim = r.uniform(-2, 2), p1 = r.uniform(-3, 3), p2 = r.uniform(-3, 3);
        const double chi = ziegler::solve_shear_angle(phim, p1, p2, c, 0.0, 1e-13);
        CHECK(chi == doctest::Approx(bisect_chi(phim, p1, p2, c.c_axial, c.c_shear)).scale(1.0).epsilon(1e-11));
        CHECK(std::abs(ziegler::shear_angle_residual(chi, phim, p1, p2, c)) < 1e-12);
        CHECK(ziegler::shear_angle_residual(chi, phim, p1, p2, c) ==
              doctest::Approx(shear_condition(chi, phim, p1, p2, c.c_axial, c.c_shear)).scale(1.0));
    }
}

TEST_CASE("shear angle needs a finite shear stiffness") {
    const SectionCompliances k{1e-3, 0.0, 1.0};
    CHECK_THROWS_AS(ziegler::solve_shear_angle(0.1, 1, 1, k, 0.0, 1e-12), ContractViolation);
    CHECK_THROWS_AS(ziegler::solve_shear_angle(0.1, 1, 1, {1e-3, 1e-2, 1.0}, 0.0, 0.0), ContractViolation);
}

TEST_CASE("Reissner and Ziegler coincide bit for bit without shear compliance") {
    Rng r(12);
    for (int k = 0; k < 10; ++k) {
        BeamElement beam(r.uniform(0.5, 2), r.integer(1, 50), {r.uniform(0, 1e-2), 0.0, r.uniform(0.5, 2)});
        if (k % 2) beam.offset_left = 0.1;
        DistributedLoad load;
        if (k % 3) load.pz = LoadDensity::constant(r.uniform(-2, 2)), load.m = LoadDensity::constant(r.uniform(-1, 1));
        const auto res = precompute_partial_resultants(load, beam);
        const GeneralizedForces f{r.uniform(-2, 2), r.uniform(-2, 2), r.uniform(-1, 1)};
        const GeneralizedCoordinates ra{r.uniform(-1, 1), r.uniform(-1, 1), r.uniform(-1, 1)};
        const auto a = reissner::sweep(f, ra, beam, res);
        const auto b = ziegler::sweep(f, ra, beam, res);
        CHECK(a.x == b.x);
        CHECK(a.z == b.z);
        CHECK(a.phi == b.phi);
        CHECK(a.moment == b.moment);
        CHECK(a.r_b == b.r_b);
        CHECK(a.mp_end == b.mp_end);
        const auto la = reissner::sweep_linearized(a, f, ra, beam, res, all_seeds());
        const auto lb = ziegler::sweep_linearized(b, f, ra, beam, res, all_seeds());
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) CHECK(la[j][i] == doctest::Approx(lb[j][i]).scale(1.0).epsilon(1e-13));
    }
}

TEST_CASE("stiff shear brings Ziegler onto Reissner") {
    GeneralizedForces f{-1.0, 2.0, 0.5};
    double prev = 0.0;
    for (double cs : {1e-2, 1e-3, 1e-4}) {
        BeamElement beam(1.0, 16, {1e-3, cs, 1.0});
        const auto res = precompute_partial_resultants({}, beam);
        const double d = std::abs(ziegler::sweep(f, {}, beam, res).r_b.z - reissner::sweep(f, {}, beam, res).r_b.z);
        if (prev > 0.0) CHECK(d < 0.2 * prev);
        prev = d;
    }
}

TEST_CASE("Ziegler linearized sweep matches finite differences") {
    Rng r(77);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        BeamElement beam(r.uniform(0.5, 2.0), r.integer(3, 40), {r.uniform(1e-4, 1e-2), r.uniform(1e-3, 5e-2), r.uniform(0.5, 2)});
        if (k % 2) beam.offset_right = 0.1 * beam.length;
        DistributedLoad load;
        if (k % 3) load.px = LoadDensity::constant(r.uniform(-1, 1)), load.pz = LoadDensity::constant(r.uniform(-2, 2));
        const auto res = precompute_partial_resultants(load, beam);
        const GeneralizedForces f{r.uniform(-2, 2), r.uniform(-2, 2), r.uniform(-1, 1)};
        const GeneralizedCoordinates ra{0.0, 0.0, r.uniform(-1, 1)};
        const auto rec = ziegler::sweep(f, ra, beam, res, 1e-15);
        const auto lin = ziegler::sweep_linearized(rec, f, ra, beam, res, all_seeds());
        for (int j = 0; j < 4; ++j) {
            const double h = 1e-6;
            auto perturbed = [&](double sgn) {
                auto ff = f;
                auto rr = ra;
                if (j == 0) ff.fx += sgn * h;
                if (j == 1) ff.fz += sgn * h;
                if (j == 2) ff.m += sgn * h;
                if (j == 3) rr.phi += sgn * h;
                const auto p = ziegler::sweep(ff, rr, beam, res, 1e-15);
                return std::array{p.r_b.x, p.r_b.z, p.r_b.phi, p.mp_end};
            };
            const auto up = perturbed(1), dn = perturbed(-1);
            double scale = 0.0;
            for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(lin[j][i]));
            for (int i = 0; i < 4; ++i)
                worst = std::max(worst, std::abs((up[i] - dn[i]) / (2 * h) - lin[j][i]) / std::max(scale, 1e-8));
        }
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("Ziegler midpoint states satisfy the shear condition") {
    BeamElement beam(1.0, 10, {1e-3, 0.1, 1.0});
    const auto res = precompute_partial_resultants({}, beam);
    const GeneralizedForces f{0.5, -3.0, 1.0};
    const auto rec = ziegler::sweep(f, {}, beam, res);
    for (const auto& m : rec.ziegler) {
        CHECK(std::abs(m.chi / 0.1 - m.lambda * m.q_star) < 1e-10);
        CHECK(m.lambda == doctest::Approx(1 + m.n_tilde * 1e-3));
    }
}
