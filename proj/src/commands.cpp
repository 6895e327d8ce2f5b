#include "fdbeam/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <numbers>

#include "fdbeam/benchmarks.hpp"
#include "fdbeam/errors.hpp"
#include "fdbeam/reference.hpp"

namespace fdbeam::cli {

namespace ref = reference;

std::string format_number(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    return std::string(buf, r.ptr);
}

namespace {

const char* kDof[3] = {"ux", "uz", "phi"};

void row(std::ostream& out, const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
}

}  // namespace

void cmd_trace(const ModelFile& mf, std::ostream& out, std::ostream* shape_out) {
    const FrameSolver solver(mf.model, mf.solver);
    const FrameState st = solver.run();
    const auto& m = mf.model;

    std::vector<std::string> head{"step", "load_factor", "control"};
    for (const auto& d : m.monitor.dofs) head.push_back("n" + std::to_string(d.node) + "_" + kDof[d.dof]);
    head.push_back("lowest_eigenvalue");
    if (m.monitor.diagonal) head.push_back("monitored");
    const char* ef[6] = {"Xa", "Za", "Ma", "Xb", "Zb", "Mb"};
    for (const auto& e : m.elements)
        for (auto f : ef) head.push_back("e" + std::to_string(e.id) + "_" + f);
    row(out, head);
    for (const auto& r : st.history) {
        std::vector<std::string> c{std::to_string(r.step), format_number(r.load_factor), format_number(r.control)};
        for (const auto& d : m.monitor.dofs) c.push_back(format_number(r.dof_values[solver.global_dof(d.node, d.dof)]));
        c.push_back(format_number(r.lowest_eigenvalue));
        if (m.monitor.diagonal) c.push_back(format_number(r.monitored));
        for (const auto& f : r.end_forces)
            for (double v : f) c.push_back(format_number(v));
        row(out, c);
    }

    if (!shape_out) return;
    row(*shape_out, {"element", "model", "xi", "x_s", "z_s", "phi", "N", "Q", "M"});
    for (size_t e = 0; e < st.element_states.size(); ++e) {
        const auto& rec = st.element_states[e].record;
        const auto& beam = solver.beam(static_cast<int>(e));
        const bool z = rec.model == Formulation::ziegler;
        for (int i = 1; i <= beam.segments; ++i) {
            double n, q;
            if (z) {
                n = rec.ziegler[i - 1].n_tilde;
                q = rec.ziegler[i - 1].q_star;
            } else {
                n = rec.reissner[i - 1].n;
                q = rec.reissner[i - 1].q;
            }
            row(*shape_out, {std::to_string(m.elements[e].id), z ? "ziegler" : "reissner", format_number(beam.mid_xi(i)),
                             format_number(0.5 * (rec.x[i - 1] + rec.x[i])), format_number(0.5 * (rec.z[i - 1] + rec.z[i])),
                             format_number(rec.phi_mid[i - 1]), format_number(n), format_number(q),
                             format_number(0.5 * (rec.moment[i - 1] + rec.moment[i]))});
        }
    }
}

void cmd_converge(const std::string& case_id, std::vector<int> segments, std::ostream& out) {
    bench::case_info(case_id);  // unknown ids fail before any work starts
    if (segments.empty()) throw InputError("segment list is empty");
    for (int n : segments)
        if (n < 1) throw InputError("segment counts must be >= 1");
    std::sort(segments.begin(), segments.end());
    segments.erase(std::unique(segments.begin(), segments.end()), segments.end());

    std::vector<std::future<double>> jobs;
    for (int n : segments) jobs.push_back(std::async(std::launch::async, [&case_id, n] { return bench::case_value(case_id, n); }));
    std::vector<double> v;
    for (auto& j : jobs) v.push_back(j.get());

    const double finest = v.back();
    row(out, {"segments", "value", "rel_error_percent", "order"});
    double prev_err = NAN;
    for (size_t i = 0; i < v.size(); ++i) {
        const double err = std::abs(v[i] - finest) / std::abs(finest) * 100.0;
        double order = NAN;
        if (i > 0 && i + 1 < v.size() && prev_err > 0.0 && err > 0.0)
            order = std::log(prev_err / err) / std::log(static_cast<double>(segments[i]) / segments[i - 1]);
        row(out, {std::to_string(segments[i]), format_number(v[i]), format_number(err), format_number(order)});
        prev_err = err;
    }
}

namespace {

enum class EndKind { clamped, pinned, free };

EndKind classify(const Node& n, int lateral) {
    const bool lat = n.dofs[lateral] != DofKind::free;
    const bool rot = n.dofs[2] != DofKind::free;
    if (!lat) return EndKind::free;
    return rot ? EndKind::clamped : EndKind::pinned;
}

}  // namespace

BuckleReport cmd_buckle(const ModelFile& mf_in, BuckleMode mode, std::optional<double> increment) {
    ModelFile mf = mf_in;
    auto& m = mf.model;
    m.validate();
    const auto& first = m.elements.front();
    const auto& last = m.elements.back();
    const Node& na = m.nodes[m.node_index(first.node_a)];
    const Node& nb = m.nodes[m.node_index(last.node_b)];
    const double length = std::hypot(nb.x - na.x, nb.z - na.z);
    if (!(length > 0.0)) throw InputError("member end nodes coincide");
    for (const auto& e : m.elements)
        if (e.compliances != first.compliances || e.model != first.model)
            throw InputError("buckle expects a prismatic member with one model");

    // physical section (Euler elements get their penalty only inside the solver)
    const auto& c = first.compliances.front();
    double ref_force = 0.0;
    for (const auto& l : m.nodal_loads) ref_force = std::max(ref_force, std::hypot(l.f.fx, l.f.fz));
    auto strain_of = [&](const ScheduleStep& s, double control) {
        if (!s.prescribed.empty() && s.load_increment == 0.0) return control / length;
        return control * ref_force * c.c_axial;
    };
    if (m.schedule.empty()) throw InputError("schedule: needs at least one step");
    const ScheduleStep driving = m.schedule.front();
    if (increment) {
        if (!(*increment > 0.0)) throw InputError("increment must be positive");
        for (auto& s : m.schedule) {
            const double per_step = strain_of(s, s.control_increment());
            if (!(per_step > 0.0)) throw InputError("schedule step does not drive the member");
            const double k = *increment / per_step;
            s.load_increment *= k;
            for (auto& p : s.prescribed) p.value *= k;
            s.repeat = static_cast<int>(std::ceil(s.repeat / k - 1e-9));
        }
    }
    mf.solver.stop_at_sign_change = true;
    const FrameState st = FrameSolver(m, mf.solver).run();

    BuckleReport r;
    const auto crit = detect_critical(st.history);
    r.found = crit.has_value();
    if (r.found) r.numerical = strain_of(driving, *crit);

    const int lateral = std::abs(nb.x - na.x) >= std::abs(nb.z - na.z) ? 1 : 0;
    const EndKind ea = classify(na, lateral), eb = classify(nb, lateral);
    std::optional<ref::Support> sup;
    if (ea == EndKind::clamped && eb == EndKind::clamped) sup = ref::Support::clamped_both;
    if ((ea == EndKind::clamped && eb == EndKind::free) || (ea == EndKind::free && eb == EndKind::clamped))
        sup = ref::Support::clamped_one_end;
    if (ea == EndKind::pinned && eb == EndKind::pinned) sup = ref::Support::simply_supported;
    if (!sup) {
        r.note = "supports do not match a closed-form case";
    } else if (!(c.c_axial > 0.0) || !(c.c_bend > 0.0)) {
        r.note = "rigid section, no closed form";
    } else {
        ref::StabilityParams p;
        p.support = *sup;
        p.slenderness = ref::StabilityParams::buckling_length_factor(*sup) * length / std::sqrt(c.c_axial / c.c_bend);
        const bool shear_rigid = c.c_shear == 0.0 || first.model == ModelSelector::kirchhoff ||
                                 first.model == ModelSelector::euler;
        p.gamma = shear_rigid ? 1.0 : c.c_axial / c.c_shear;
        if (mode == BuckleMode::compression) {
            ref::StabilityModel sm = ref::StabilityModel::reissner;
            if (first.model == ModelSelector::euler) sm = ref::StabilityModel::euler;
            else if (shear_rigid) sm = ref::StabilityModel::kirchhoff;
            else if (first.model == ModelSelector::ziegler) sm = ref::StabilityModel::ziegler;
            r.analytical = ref::critical_compression(sm, p);
            if (!r.analytical) r.note = "no bifurcation in the closed form";
        } else if (first.model == ModelSelector::reissner && !shear_rigid) {
            r.analytical = ref::critical_tension_reissner(p);
            if (!r.analytical) r.note = "no tensile bifurcation for GA_s >= EA";
        } else {
            r.note = "no tensile bifurcation expected for this model";
        }
    }
    if (r.found && r.analytical) r.relative_deviation = (r.numerical - *r.analytical) / *r.analytical;
    return r;
}

void print_buckle(const BuckleReport& r, std::ostream& out) {
    if (r.found)
        out << "critical_strain_numerical," << format_number(r.numerical) << '\n';
    else
        out << "critical_strain_numerical,not-critical\n";
    out << "critical_strain_analytical," << (r.analytical ? format_number(*r.analytical) : "") << '\n';
    out << "relative_deviation," << (r.found && r.analytical ? format_number(r.relative_deviation) : "") << '\n';
    if (!r.note.empty()) out << "note," << r.note << '\n';
}

std::vector<std::string> reference_tables() {
    return {"critloads", "critstrainten", "fresnel", "epsZc", "epsRc", "timoshenko", "cantilever", "tension-mode",
            "postcritical"};
}

void cmd_reference(const std::string& table, std::ostream& out) {
    using std::numbers::pi;
    const double g3 = 1.0 / 3.0;
    auto opt = [](std::optional<double> v) { return format_number(v.value_or(NAN)); };
    if (table == "critloads") {
        row(out, {"h_over_L", "euler", "kirchhoff", "reissner", "ziegler"});
        for (int hi : {6, 12}) {
            const auto p = ref::StabilityParams::rectangular(g3, 1.0 / hi, ref::Support::clamped_both);
            row(out, {format_number(1.0 / hi), opt(ref::critical_compression(ref::StabilityModel::euler, p)),
                      opt(ref::critical_compression(ref::StabilityModel::kirchhoff, p)),
                      opt(ref::critical_compression(ref::StabilityModel::reissner, p)),
                      opt(ref::critical_compression(ref::StabilityModel::ziegler, p))});
        }
    } else if (table == "critstrainten") {
        row(out, {"gamma", "one_end_h4", "one_end_h8", "both_h6", "simply_supported"});
        for (double g : {g3, 0.1, 0.01}) {
            auto v = [g](double h, ref::Support s) {
                return ref::critical_tension_reissner(ref::StabilityParams::rectangular(g, h, s));
            };
            row(out, {format_number(g), opt(v(0.25, ref::Support::clamped_one_end)),
                      opt(v(0.125, ref::Support::clamped_one_end)), opt(v(1.0 / 6, ref::Support::clamped_both)),
                      opt(v(1.0 / 6, ref::Support::simply_supported))});
        }
    } else if (table == "fresnel") {
        row(out, {"x", "C", "S"});
        for (int i = 0; i <= 100; ++i) {
            const double x = 0.05 * i;
            const auto f = ref::fresnel(x);
            row(out, {format_number(x), format_number(f.c), format_number(f.s)});
        }
    } else if (table == "epsZc" || table == "epsRc") {
        const bool zg = table == "epsZc";
        row(out, {"gamma", "slenderness", "critical_strain"});
        for (double g : {g3, 0.1, 0.01, 1.0})
            for (int i = 1; i <= 100; ++i) {
                ref::StabilityParams p{g, 1.0 * i, ref::Support::clamped_both};
                row(out, {format_number(g), format_number(p.slenderness),
                          opt(ref::critical_compression(zg ? ref::StabilityModel::ziegler : ref::StabilityModel::reissner, p))});
            }
    } else if (table == "timoshenko") {
        row(out, {"h_over_L", "midspan_stiffness", "clamped_uniform_w_per_unit_load"});
        for (int i = 1; i <= 50; ++i) {
            const double h = 0.01 * i;
            row(out, {format_number(h),
                      format_number(1.0 / ref::timoshenko_deflection(ref::TimoshenkoCase::midspan_force, 1.0, h)),
                      format_number(ref::timoshenko_deflection(ref::TimoshenkoCase::clamped_uniform, 1.0, h))});
        }
    } else if (table == "cantilever") {
        row(out, {"m_hat", "tip_x", "tip_z"});
        for (int k = 0; k <= 60; ++k) {
            const double mh = 0.5 * k;
            const auto t = ref::cantilever_moment_shape(ref::CantileverMomentParams::from_load(mh), 1.0);
            row(out, {format_number(mh), format_number(t.first), format_number(t.second)});
        }
    } else if (table == "tension-mode") {
        row(out, {"support", "xi", "dphi", "dz"});
        const std::pair<const char*, ref::Support> sups[] = {{"clamped-one-end", ref::Support::clamped_one_end},
                                                             {"simply-supported", ref::Support::simply_supported},
                                                             {"clamped-both", ref::Support::clamped_both}};
        for (const auto& [name, s] : sups) {
            const auto p = ref::StabilityParams::rectangular(g3, 1.0 / 6, s);
            for (int i = 0; i <= 50; ++i) {
                const double t = i / 50.0;
                const auto v = ref::tensile_buckling_mode(p, t);
                row(out, {name, format_number(t), format_number(v.dphi), format_number(v.dz)});
            }
        }
    } else if (table == "postcritical") {
        row(out, {"gamma", "phi", "force_ratio", "length_ratio"});
        for (double g : {g3, 0.1, 0.01})
            for (int i = 0; i < 50; ++i) {
                const double phi = i * (pi / 2) / 50.0;
                const auto r = ref::postcritical_tension_ss(phi, g);
                row(out, {format_number(g), format_number(phi), format_number(r.force_ratio), format_number(r.length_ratio)});
            }
    } else {
        std::string known;
        for (const auto& t : reference_tables()) known += (known.empty() ? "" : ", ") + t;
        throw InputError("unknown table '" + table + "' (known: " + known + ")");
    }
}

}  // namespace fdbeam::cli
