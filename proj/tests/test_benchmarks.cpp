#include <cmath>

#include "doctest.h"
#include "fdbeam/benchmarks.hpp"
#include "fdbeam/errors.hpp"

using namespace fdbeam;
using bench::case_value;

TEST_CASE("registry") {
    CHECK(bench::cases().size() >= 39);
    CHECK(bench::case_info("ss-stiffness-h4").quantity == bench::Quantity::stiffness);
    CHECK_THROWS_AS(bench::case_info("no-such-case"), InputError);
    CHECK_THROWS_AS(bench::build_case("no-such-case", 4), InputError);
    for (const auto& c : bench::cases()) CHECK_NOTHROW(bench::build_case(c.id, 2).validate());
}

TEST_CASE("initial stiffness on coarse grids") {
    CHECK(case_value("ss-stiffness-h4", 2) == doctest::Approx(36.5714).epsilon(2e-6));
    CHECK(case_value("ss-stiffness-h4", 4) == doctest::Approx(39.3846).epsilon(2e-6));
    CHECK(case_value("ss-stiffness-h16", 8) == doctest::Approx(47.0805).epsilon(2e-6));
    CHECK(bench::analytic_value("ss-stiffness-h4") == doctest::Approx(40.4210).epsilon(2e-6));
    CHECK(std::isnan(bench::analytic_value("ss-midforce-h4-reissner")));
}

TEST_CASE("nonlinear deflections on coarse grids") {
    CHECK(case_value("ss-midforce-h4-reissner", 8) == doctest::Approx(0.480365).epsilon(2e-6));
    CHECK(case_value("ss-midforce-h16-ziegler", 16) == doctest::Approx(0.382273).epsilon(2e-6));
    CHECK(case_value("clamped-uniform-h6-ziegler", 2) == doctest::Approx(0.355012).epsilon(2e-6));
    CHECK(case_value("clamped-uniform-h6-reissner", 4) == doctest::Approx(0.362076).epsilon(2e-6));
}

TEST_CASE("linear clamped beam converges to the Timoshenko value") {
    const double ref = bench::analytic_value("clamped-linear-h6");
    CHECK(ref == doctest::Approx(1e-4));
    const double e1 = case_value("clamped-linear-h6", 16) - ref, e2 = case_value("clamped-linear-h6", 32) - ref;
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("critical strains") {
    const auto r = bench::run_case("column-reissner-h12", 32);
    CHECK(r.found);
    CHECK(r.value == doctest::Approx(0.021871).epsilon(5e-4));
    CHECK(case_value("tension-ss-g10", 8) == doctest::Approx(1.0 / 9).epsilon(1e-3));
}

TEST_CASE("cantilever and dome on coarse grids") {
    CHECK(case_value("fresnel-cantilever", 50) < 1e-3);
    const auto d = bench::run_case("dome-offset0", 20);
    CHECK(d.found);
    CHECK(d.value == doctest::Approx(7.75).epsilon(0.02));
    const auto curve = bench::driving_curve("dome-offset0", d.state);
    CHECK(curve.size() == d.state.history.size());
}
