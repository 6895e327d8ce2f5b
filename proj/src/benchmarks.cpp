#include "fdbeam/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>

#include "fdbeam/errors.hpp"
#include "fdbeam/reference.hpp"

namespace fdbeam::bench {

namespace {

using D = DofKind;
namespace ref = reference;

struct Entry {
    CaseInfo info;
    std::function<FrameModel(int)> build;
    SolverOptions opt;
    double analytic = NAN;
};

ElementDef element(int id, int a, int b, ModelSelector m, int n, SectionCompliances c, DistributedLoad q = {},
                   double off = 0.0) {
    ElementDef e;
    e.id = id;
    e.node_a = a;
    e.node_b = b;
    e.model = m;
    e.segments = n;
    e.compliances = {c};
    e.offset_left = e.offset_right = off;
    e.load = std::move(q);
    return e;
}

SectionCompliances rect_section(double h_over_L, double gamma = 1.0 / 3.0) {
    // EI = 1, EA = 12 / h^2
    const double ea = 12.0 / (h_over_L * h_over_L);
    return SectionCompliances::from_stiffness(ea, gamma * ea, 1.0);
}

FrameModel simply_supported(double h, ModelSelector m, int n, double force, int steps) {
    FrameModel fm;
    fm.nodes = {{1, 0.0, 0.0, {D::fixed, D::fixed, D::free}}, {2, 0.5, 0.0, {}}, {3, 1.0, 0.0, {D::free, D::fixed, D::free}}};
    const auto c = rect_section(h);
    fm.elements = {element(1, 1, 2, m, n, c), element(2, 2, 3, m, n, c)};
    fm.nodal_loads = {{2, {0.0, 1.0, 0.0}}};
    fm.schedule = {{force / steps, {}, steps}};
    fm.monitor.dofs = {{2, 1}};
    return fm;
}

FrameModel clamped_uniform(double h, ModelSelector m, int n, double f, int steps) {
    FrameModel fm;
    fm.nodes = {{1, 0.0, 0.0, {D::fixed, D::fixed, D::fixed}}, {2, 0.5, 0.0, {}}, {3, 1.0, 0.0, {D::fixed, D::fixed, D::fixed}}};
    const auto c = rect_section(h);
    DistributedLoad q;
    q.pz = LoadDensity::constant(1.0);
    fm.elements = {element(1, 1, 2, m, n, c, q), element(2, 2, 3, m, n, c, q)};
    fm.schedule = {{f / steps, {}, steps}};
    fm.monitor.dofs = {{2, 1}};
    return fm;
}

// span 2, EI = 10: half of it is the cantilever with tip force F/2
FrameModel crosscheck_beam(double force, double gas, int n) {
    FrameModel fm;
    fm.nodes = {{1, 0.0, 0.0, {D::fixed, D::fixed, D::free}}, {2, 1.0, 0.0, {}}, {3, 2.0, 0.0, {D::free, D::fixed, D::free}}};
    const auto c = SectionCompliances::from_stiffness(1e8, gas, 10.0);
    fm.elements = {element(1, 1, 2, ModelSelector::reissner, n, c), element(2, 2, 3, ModelSelector::reissner, n, c)};
    fm.nodal_loads = {{2, {0.0, force, 0.0}}};
    fm.schedule = {{0.1, {}, 10}};
    fm.monitor.dofs = {{2, 1}};
    return fm;
}

FrameModel moment_cantilever(int n) {
    FrameModel fm;
    fm.nodes = {{1, 0.0, 0.0, {D::fixed, D::fixed, D::fixed}}, {2, 1.0, 0.0, {}}};
    // N = Q = 0 along the whole path, so EA and GA_s do not enter
    const auto c = SectionCompliances::from_stiffness(1e4, 1e4 / 3.0, 1.0);
    DistributedLoad q;
    q.m = LoadDensity::constant(1.0);
    fm.elements = {element(1, 1, 2, ModelSelector::reissner, n, c, q)};
    fm.schedule = {{0.5, {}, 60}};
    fm.monitor.dofs = {{2, 0}, {2, 1}};
    return fm;
}

constexpr double kDomeSpan = 15.0, kDomeRise = 0.6;

// one of the three beams; z points down, apex above the support
FrameModel dome(double offset_fraction, int n) {
    const double E = 1e7, G = E / 2.6, b = 0.14, h = 0.17;
    const double A = b * h, I = b * h * h * h / 12.0;
    const auto c = SectionCompliances::from_stiffness(E * A, 5.0 / 6.0 * G * A, E * I);
    const double L = std::hypot(kDomeSpan, kDomeRise);
    const double off = 0.5 * offset_fraction * L;  // fraction of the length, split over both ends
    FrameModel fm;
    fm.nodes = {{1, 0.0, 0.0, {D::fixed, D::fixed, D::fixed}},
                {2, kDomeSpan, -kDomeRise, {D::fixed, D::prescribed, D::fixed}}};
    fm.elements = {element(1, 1, 2, ModelSelector::reissner, n, c, {}, off)};
    fm.schedule = {{0.0, {{2, 1, 0.002}}, 150}};
    fm.monitor.dofs = {{2, 1}};
    return fm;
}

FrameModel column(ModelSelector m, double h, int n) {
    const double ea = 12.0 / (h * h);
    const bool euler = m == ModelSelector::euler;
    FrameModel fm;
    fm.nodes = {{1, 0.0, 0.0, {euler ? D::free : D::prescribed, D::fixed, D::fixed}},
                {2, 0.5, 0.0, {}},
                {3, 1.0, 0.0, {D::fixed, D::fixed, D::fixed}}};
    const auto c = rect_section(h);
    fm.elements = {element(1, 1, 2, m, n, c), element(2, 2, 3, m, n, c)};
    if (euler) {
        // load control; reference load EA so the load factor reads as strain
        fm.nodal_loads = {{1, {ea, 0.0, 0.0}}};
        fm.schedule = {{0.001, {}, 150}};
    } else {
        fm.schedule = {{0.0, {{1, 0, 0.001}}, 150}};
    }
    fm.monitor.dofs = {{2, 1}};
    fm.monitor.diagonal = DofRef{2, 1};
    return fm;
}

FrameModel tension(ref::Support sup, double gamma, double h, int n) {
    const auto c = rect_section(h, gamma);
    FrameModel fm;
    const auto m = ModelSelector::reissner;
    int last = 2;
    switch (sup) {
        case ref::Support::clamped_one_end:
            fm.nodes = {{1, 0.0, 0.0, {D::fixed, D::fixed, D::fixed}}, {2, 1.0, 0.0, {D::prescribed, D::free, D::free}}};
            fm.elements = {element(1, 1, 2, m, n, c)};
            break;
        case ref::Support::simply_supported:
            fm.nodes = {{1, 0.0, 0.0, {D::fixed, D::fixed, D::free}}, {2, 1.0, 0.0, {D::prescribed, D::fixed, D::free}}};
            fm.elements = {element(1, 1, 2, m, n, c)};
            break;
        case ref::Support::clamped_both:
            fm.nodes = {{1, 0.0, 0.0, {D::fixed, D::fixed, D::fixed}},
                        {2, 0.5, 0.0, {}},
                        {3, 1.0, 0.0, {D::prescribed, D::fixed, D::fixed}}};
            fm.elements = {element(1, 1, 2, m, n, c), element(2, 2, 3, m, n, c)};
            last = 3;
            break;
    }
    // far end pulled in +x, strain increment 0.001 per step
    fm.schedule = {{0.0, {{last, 0, 0.001}}, 700}};
    fm.monitor.dofs = {{last, 0}};
    return fm;
}

std::string model_name(ModelSelector m) {
    switch (m) {
        case ModelSelector::reissner: return "reissner";
        case ModelSelector::ziegler: return "ziegler";
        case ModelSelector::kirchhoff: return "kirchhoff";
        case ModelSelector::euler: return "euler";
    }
    return "?";
}

std::map<std::string, Entry> make_registry() {
    std::map<std::string, Entry> r;
    auto add = [&](Entry e) { r.emplace(e.info.id, std::move(e)); };
    SolverOptions stop;
    stop.stop_at_sign_change = true;

    for (int hi : {4, 16}) {
        const double h = 1.0 / hi;
        add({{"ss-stiffness-h" + std::to_string(hi), "simply supported beam, midspan force, initial stiffness",
              Quantity::stiffness, 128},
             [h](int n) { return simply_supported(h, ModelSelector::reissner, n, 1e-6, 1); },
             {},
             1.0 / ref::timoshenko_deflection(ref::TimoshenkoCase::midspan_force, 1.0, h)});
    }
    for (int hi : {4, 16, 64})
        for (auto m : {ModelSelector::reissner, ModelSelector::ziegler}) {
            const double h = 1.0 / hi;
            add({{"ss-midforce-h" + std::to_string(hi) + "-" + model_name(m),
                  "simply supported beam, midspan force 50 EI/L^2, w/L", Quantity::deflection, 128},
                 [h, m](int n) { return simply_supported(h, m, n, 50.0, 10); },
                 {}});
        }
    add({{"clamped-linear-h6", "clamped beam, uniform load 0.0288 EI/L^3, w/L", Quantity::deflection, 64},
         [](int n) { return clamped_uniform(1.0 / 6, ModelSelector::reissner, n, 0.0288, 1); },
         {},
         ref::timoshenko_deflection(ref::TimoshenkoCase::clamped_uniform, 0.0288, 1.0 / 6)});
    for (auto m : {ModelSelector::reissner, ModelSelector::ziegler})
        add({{"clamped-uniform-h6-" + model_name(m), "clamped beam, uniform load 300 EI/L^3, w/L",
              Quantity::deflection, 256},
             [m](int n) { return clamped_uniform(1.0 / 6, m, n, 300.0, 10); },
             {}});
    for (int f : {20, 200})
        for (double ga : {500.0, 5e20}) {
            const std::string gs = ga == 500.0 ? "500" : "5e20";
            add({{"crosscheck-f" + std::to_string(f) + "-ga" + gs,
                  "span 2, EI = 10, EA = 1e8, midspan force; deflection w", Quantity::deflection, 1000},
                 [f, ga](int n) { return crosscheck_beam(f, ga, n); },
                 {}});
        }
    add({{"fresnel-cantilever", "cantilever under distributed moment 30 EI/L^2, tip deviation / L",
          Quantity::tip_deviation, 500},
         moment_cantilever,
         {},
         0.0});
    for (int pct : {0, 10, 20})
        add({{"dome-offset" + std::to_string(pct), "shallow frame dome, snap-through force [N] of the joint",
              Quantity::peak_force, 100},
             [pct](int n) { return dome(pct / 100.0, n); },
             {}});
    for (auto m : {ModelSelector::euler, ModelSelector::kirchhoff, ModelSelector::reissner, ModelSelector::ziegler})
        for (int hi : {6, 12}) {
            const double h = 1.0 / hi;
            const ref::StabilityModel sm = m == ModelSelector::euler       ? ref::StabilityModel::euler
                                           : m == ModelSelector::kirchhoff ? ref::StabilityModel::kirchhoff
                                           : m == ModelSelector::reissner  ? ref::StabilityModel::reissner
                                                                           : ref::StabilityModel::ziegler;
            const auto p = ref::StabilityParams::rectangular(1.0 / 3.0, h, ref::Support::clamped_both);
            add({{"column-" + model_name(m) + "-h" + std::to_string(hi),
                  "clamped column in compression, critical strain", Quantity::critical_strain, 32},
                 [m, h](int n) { return column(m, h, n); },
                 stop,
                 ref::critical_compression(sm, p).value_or(NAN)});
        }
    struct G {
        int tag;
        double gamma;
    };
    for (G g : {G{3, 1.0 / 3.0}, G{10, 0.1}, G{100, 0.01}}) {
        const std::string gs = "-g" + std::to_string(g.tag);
        for (int hi : {4, 8}) {
            const double h = 1.0 / hi;
            const auto p = ref::StabilityParams::rectangular(g.gamma, h, ref::Support::clamped_one_end);
            add({{"tension-one" + gs + "-h" + std::to_string(hi), "bar clamped at one end in tension, critical strain",
                  Quantity::critical_strain, 32},
                 [g, h](int n) { return tension(ref::Support::clamped_one_end, g.gamma, h, n); },
                 stop,
                 *ref::critical_tension_reissner(p)});
        }
        {
            const auto p = ref::StabilityParams::rectangular(g.gamma, 1.0 / 6, ref::Support::clamped_both);
            add({{"tension-both" + gs + "-h6", "bar clamped at both ends in tension, critical strain",
                  Quantity::critical_strain, 16},
                 [g](int n) { return tension(ref::Support::clamped_both, g.gamma, 1.0 / 6, n); },
                 stop,
                 *ref::critical_tension_reissner(p)});
        }
        {
            const auto p = ref::StabilityParams::rectangular(g.gamma, 1.0 / 6, ref::Support::simply_supported);
            add({{"tension-ss" + gs, "simply supported bar in tension, critical strain", Quantity::critical_strain, 32},
                 [g](int n) { return tension(ref::Support::simply_supported, g.gamma, 1.0 / 6, n); },
                 stop,
                 *ref::critical_tension_reissner(p)});
        }
    }
    return r;
}

const std::map<std::string, Entry>& registry() {
    static const auto r = make_registry();
    return r;
}

const Entry& entry(const std::string& id) {
    const auto& r = registry();
    const auto it = r.find(id);
    if (it == r.end()) throw InputError("unknown case id '" + id + "'");
    return it->second;
}

int reaction_index(const FrameSolver& s, int node, int dof) {
    const int g = s.global_dof(node, dof);
    const auto c = s.constrained_dofs();
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] == g) return static_cast<int>(i);
    throw ContractViolation("DOF is not constrained");
}

}  // namespace

const std::vector<CaseInfo>& cases() {
    static const auto list = [] {
        std::vector<CaseInfo> v;
        for (const auto& [id, e] : registry()) v.push_back(e.info);
        return v;
    }();
    return list;
}

const CaseInfo& case_info(const std::string& id) { return entry(id).info; }

FrameModel build_case(const std::string& id, int segments) {
    if (segments < 1) throw InputError("segments must be >= 1");
    return entry(id).build(segments);
}

SolverOptions case_options(const std::string& id) { return entry(id).opt; }

double analytic_value(const std::string& id) { return entry(id).analytic; }

std::vector<CurvePoint> driving_curve(const std::string& id, const FrameState& st) {
    const auto& e = entry(id);
    const FrameModel fm = e.build(1);
    const FrameSolver s(fm, e.opt);
    std::vector<CurvePoint> out;
    const bool dome_case = id.rfind("dome-", 0) == 0;
    for (const auto& rec : st.history) {
        const auto& sched = fm.schedule.front();
        if (!sched.prescribed.empty()) {
            const auto& p = sched.prescribed.front();
            const double u = rec.dof_values[s.global_dof(p.node, p.dof)];
            double f = rec.reactions[reaction_index(s, p.node, p.dof)];
            if (dome_case) f *= 3.0;  // three beams meet at the joint
            out.push_back({u, f});
        } else {
            const auto& d = fm.monitor.dofs.front();
            out.push_back({rec.dof_values[s.global_dof(d.node, d.dof)], rec.load_factor});
        }
    }
    return out;
}

CaseResult run_case(const std::string& id, int segments) {
    const auto& e = entry(id);
    const FrameModel fm = build_case(id, segments);
    const FrameSolver solver(fm, e.opt);
    CaseResult r;
    if (e.info.quantity == Quantity::stiffness) {
        // linear stiffness straight from the tangent of the unloaded state; a tiny-load
        // Newton solve drowns in round-off once the grid gets fine
        r.state = solver.initial_state();
        const auto fd = solver.free_dofs();
        std::vector<double> rhs(fd.size(), 0.0);
        for (const auto& nl : fm.nodal_loads)
            for (int d = 0; d < 3; ++d) {
                const auto it = std::find(fd.begin(), fd.end(), solver.global_dof(nl.node, d));
                if (it != fd.end()) rhs[it - fd.begin()] += std::array{nl.f.fx, nl.f.fz, nl.f.m}[d];
            }
        const auto du = lu_solve(solver.free_tangent(r.state), rhs);
        const auto it = std::find(fd.begin(), fd.end(), solver.global_dof(2, 1));
        r.value = 1.0 / du[it - fd.begin()];
        return r;
    }
    r.state = solver.run();
    const auto& st = r.state;
    switch (e.info.quantity) {
        case Quantity::stiffness: break;
        case Quantity::deflection: {
            const auto& d = fm.monitor.dofs.front();
            r.value = st.dof(fm, d.node, d.dof);
            break;
        }
        case Quantity::tip_deviation: {
            const double mhat = st.load_factor;
            const auto ex = ref::cantilever_moment_shape(ref::CantileverMomentParams::from_load(mhat), 1.0);
            r.value = std::hypot(1.0 + st.dof(fm, 2, 0) - ex.first, st.dof(fm, 2, 1) - ex.second);
            break;
        }
        case Quantity::peak_force: {
            const auto c = driving_curve(id, st);
            r.found = false;
            for (size_t k = 1; k + 1 < c.size(); ++k) {
                if (c[k].force > c[k - 1].force && c[k].force >= c[k + 1].force) {
                    // parabola through three equally spaced points
                    const double a = c[k - 1].force, b = c[k].force, d = c[k + 1].force;
                    const double den = a - 2 * b + d;
                    r.value = den < 0.0 ? b - (a - d) * (a - d) / (8.0 * den) : b;
                    r.found = true;
                    break;
                }
            }
            if (!r.found) r.value = NAN;
            break;
        }
        case Quantity::critical_strain: {
            const auto c = detect_critical(st.history);
            r.found = c.has_value();
            r.value = c.value_or(NAN);
            break;
        }
    }
    return r;
}

double case_value(const std::string& id, int segments) { return run_case(id, segments).value; }

}  // namespace fdbeam::bench
