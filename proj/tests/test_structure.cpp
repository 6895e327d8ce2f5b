#include <cmath>

#include "doctest.h"
#include "fdbeam/benchmarks.hpp"
#include "fdbeam/errors.hpp"
#include "fdbeam/reference.hpp"
#include "fdbeam/structure.hpp"
#include "support.hpp"

using namespace fdbeam;
using D = DofKind;

namespace {

ElementDef elem(int id, int a, int b, int n, SectionCompliances c, ModelSelector m = ModelSelector::reissner) {
    ElementDef e;
    e.id = id;
    e.node_a = a;
    e.node_b = b;
    e.model = m;
    e.segments = n;
    e.compliances = {c};
    return e;
}

// simply supported, two elements, midspan force F in steps
FrameModel ss_beam(double h, int n, double F, int steps) {
    FrameModel fm;
    fm.nodes = {{1, 0.0, 0.0, {D::fixed, D::fixed, D::free}}, {2, 0.5, 0.0, {}}, {3, 1.0, 0.0, {D::free, D::fixed, D::free}}};
    const auto c = testing_support::rect(h);
    fm.elements = {elem(1, 1, 2, n, c), elem(2, 2, 3, n, c)};
    fm.nodal_loads = {{2, {0.0, 1.0, 0.0}}};
    fm.schedule = {{F / steps, {}, steps}};
    fm.monitor.dofs = {{2, 1}};
    return fm;
}

// clamped column, axial shortening of the top in steps
FrameModel column(double h, int n, double du, int steps) {
    FrameModel fm;
    fm.nodes = {{1, 0.0, 0.0, {D::fixed, D::fixed, D::fixed}}, {2, 0.5, 0.0, {}}, {3, 1.0, 0.0, {D::prescribed, D::fixed, D::fixed}}};
    const auto c = testing_support::rect(h);
    fm.elements = {elem(1, 1, 2, n, c), elem(2, 2, 3, n, c)};
    fm.schedule = {{0.0, {{3, 0, -du}}, steps}};
    fm.monitor.diagonal = DofRef{2, 1};
    return fm;
}

StepRecord rec(double control, double monitored) {
    StepRecord r;
    r.control = control;
    r.monitored = monitored;
    return r;
}

}  // namespace

TEST_CASE("model validation") {
    auto fm = ss_beam(0.25, 4, 1.0, 1);
    CHECK_NOTHROW(fm.validate());
    auto bad = fm;
    bad.schedule.clear();
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = fm;
    bad.elements[1].node_b = 9;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = fm;
    bad.nodes[1].id = 1;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = fm;
    bad.monitor.dofs = {{2, 5}};
    CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("small load matches the linear Timoshenko beam") {
    const double h = 0.25, F = 1e-3;
    const FrameSolver s(ss_beam(h, 64, F, 1));
    const auto st = s.run();
    // F L^3 / 48 EI + F L / 4 GA_s, EI = 1, GA_s = 4 / h^2
    const double w = F / 48.0 + F / 4.0 * h * h / 4.0;
    CHECK(st.dof(s.model(), 2, 1) == doctest::Approx(w).epsilon(2e-4));
    CHECK(st.history.size() == 2);
    CHECK(st.history.front().step == 0);
    CHECK(st.history.front().load_factor == 0.0);
}

TEST_CASE("reactions balance the applied load") {
    const FrameSolver s(ss_beam(0.25, 16, 30.0, 5));
    const auto st = s.run();
    double rz = 0.0, rx = 0.0;
    const auto cd = s.constrained_dofs();
    for (size_t i = 0; i < cd.size(); ++i) {
        if (cd[i] % 3 == 1) rz += st.reactions[i];
        if (cd[i] % 3 == 0) rx += st.reactions[i];
    }
    CHECK(rz + st.load_factor == doctest::Approx(0.0).scale(30.0).epsilon(1e-9));
    CHECK(rx == doctest::Approx(0.0).scale(30.0).epsilon(1e-9));
    CHECK(st.reactions.size() == cd.size());
    const auto& last = st.history.back();
    REQUIRE(last.end_forces.size() == 2);
    // each half carries F / 2
    CHECK(std::abs(last.end_forces[0][1]) == doctest::Approx(15.0).epsilon(1e-9));
}

TEST_CASE("tangent is symmetric for conservative loading") {
    const FrameSolver s(ss_beam(0.25, 16, 30.0, 3));
    const auto st = s.run();
    const auto k = s.free_tangent(st);
    for (int i = 0; i < k.rows(); ++i)
        for (int j = 0; j < i; ++j) CHECK(k(i, j) == doctest::Approx(k(j, i)).scale(k.max_abs()).epsilon(1e-7));
}

TEST_CASE("detect_critical interpolates the first sign change") {
    CHECK_FALSE(detect_critical({rec(0, 3), rec(1, 2), rec(2, 1)}).has_value());
    CHECK_FALSE(detect_critical({}).has_value());
    CHECK(*detect_critical({rec(0, 3), rec(1, 1), rec(2, -1), rec(3, 2)}) == doctest::Approx(1.5));
    CHECK(*detect_critical({rec(0, -2), rec(0.5, 2)}) == doctest::Approx(0.25));
    CHECK(*detect_critical({rec(0, 1), rec(1, NAN), rec(2, 0.5), rec(3, -0.5)}) == doctest::Approx(2.5));
}

TEST_CASE("column critical strain and early stop") {
    auto fm = column(1.0 / 6, 32, 0.001, 150);
    SolverOptions opt;
    opt.stop_at_sign_change = true;
    const auto st = FrameSolver(fm, opt).run();
    const auto eps = detect_critical(st.history);
    REQUIRE(eps.has_value());
    // strain = control / L with L = 1
    CHECK(std::abs(*eps) == doctest::Approx(0.078870).epsilon(2e-4));
    CHECK(st.history.size() < 151);
}

TEST_CASE("subcritical perturbation returns to the straight state") {
    const FrameSolver s(column(1.0 / 6, 16, 0.01, 5));
    const auto st = s.run();
    const auto br = s.perturb_and_branch(st, {{2, {0.0, 5.0, 0.0}}});
    CHECK(std::abs(br.dof(s.model(), 2, 1)) < 1e-9);
    CHECK(br.load_factor == st.load_factor);
}

TEST_CASE("simply supported bar in tension is singular exactly at eps = gamma / (1 - gamma)") {
    for (const char* id : {"tension-ss-g3", "tension-ss-g10", "tension-ss-g100"})
        for (int n : {1, 4, 32, 100}) {
            const auto fm = bench::build_case(id, n);
            const FrameSolver s(fm);
            const auto c = make_beam(fm, fm.elements[0]).compliances[0];
            const double g = c.c_axial / c.c_shear;
            const auto st = s.solve_step(s.initial_state(), {0.0, {{2, 0, g / (1 - g)}}, 1});
            CHECK(std::abs(st.lowest_eigenvalue) <= 1e-10 * st.tangent_scale);
        }
}

TEST_CASE("post-critical branch of the tensioned bar follows the closed form") {
    for (const char* id : {"tension-ss-g3", "tension-ss-g10", "tension-ss-g100"}) {
        const auto fm = bench::build_case(id, 16);
        const FrameSolver s(fm);
        const auto c = make_beam(fm, fm.elements[0]).compliances[0];
        const double ea = 1.0 / c.c_axial, g = c.c_axial / c.c_shear, ec = g / (1 - g);
        auto st = s.solve_step(s.initial_state(), {0.0, {{2, 0, 1.002 * ec}}, 1});
        const double m = 5e-5 * ec * ea;
        st = s.perturb_and_branch(st, {{1, {0, 0, m}}, {2, {0, 0, m}}});
        double worst = 0.0;
        for (int k = 0; k < 25; ++k) {
            const double phi = st.dof(fm, 1, 2);
            CHECK(std::abs(phi) > 1e-3);
            const auto pc = reference::postcritical_tension_ss(phi, g);
            worst = std::max(worst, std::abs(std::abs(st.reactions[0]) / ea / pc.force_ratio - 1));
            worst = std::max(worst, std::abs((1 + st.dof(fm, 2, 0)) / pc.length_ratio - 1));
            st = s.solve_step(st, {0.0, {{2, 0, ec * std::min(0.001 * std::pow(1.5, k), 0.02)}}, 1});
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("solver failures name the step") {
    auto fm = ss_beam(0.25, 8, 1e6, 1);
    SolverOptions opt;
    opt.max_iter = 2;
    opt.max_cuts = 0;
    try {
        FrameSolver(fm, opt).run();
        FAIL("expected a failure");
    } catch (const NonConvergenceError& e) {
        CHECK(std::string(e.what()).find("step 1") != std::string::npos);
    } catch (const SingularMatrixError& e) {
        CHECK(std::string(e.what()).find("step 1") != std::string::npos);
    }
}
