#include "fdbeam/model_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "fdbeam/errors.hpp"
#include "json.hpp"

namespace fdbeam {

using nlohmann::json;

namespace {

const char* kDofNames[3] = {"ux", "uz", "phi"};

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw InputError(path + ": " + msg); }

const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing field");
    return *it;
}

double num(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    // JSON has no infinity literal
    if (j.is_string() && (j == "inf" || j == "infinity")) return std::numeric_limits<double>::infinity();
    fail(path, "expected a number");
}

double num_or(const json& j, const std::string& key, double dflt, const std::string& path) {
    if (!j.contains(key)) return dflt;
    return num(j[key], path + "." + key);
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

int dof_index(const json& j, const std::string& path) {
    if (j.is_number_integer()) {
        const int d = j.get<int>();
        if (d < 0 || d > 2) fail(path, "dof index must be 0, 1 or 2");
        return d;
    }
    if (j.is_string())
        for (int d = 0; d < 3; ++d)
            if (j == kDofNames[d]) return d;
    fail(path, "expected one of ux, uz, phi");
}

DofKind dof_kind(const json& j, const std::string& path) {
    if (j == "free") return DofKind::free;
    if (j == "fixed") return DofKind::fixed;
    if (j == "prescribed") return DofKind::prescribed;
    fail(path, "expected free, fixed or prescribed");
}

ModelSelector model_kind(const json& j, const std::string& path) {
    if (j == "reissner") return ModelSelector::reissner;
    if (j == "ziegler") return ModelSelector::ziegler;
    if (j == "kirchhoff") return ModelSelector::kirchhoff;
    if (j == "euler") return ModelSelector::euler;
    fail(path, "expected reissner, ziegler, kirchhoff or euler");
}

SectionCompliances section(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    if (j.contains("EA") || j.contains("GAs") || j.contains("EI")) {
        const double ea = num(need(j, "EA", path), path + ".EA");
        const double gas = num(need(j, "GAs", path), path + ".GAs");
        const double ei = num(need(j, "EI", path), path + ".EI");
        if (!(ea > 0) || !(gas > 0) || !(ei > 0)) fail(path, "stiffnesses must be positive");
        return SectionCompliances::from_stiffness(ea, gas, ei);
    }
    SectionCompliances c;
    c.c_axial = num(need(j, "axial", path), path + ".axial");
    c.c_shear = num(need(j, "shear", path), path + ".shear");
    c.c_bend = num(need(j, "bend", path), path + ".bend");
    if (c.c_axial < 0 || c.c_shear < 0 || c.c_bend < 0) fail(path, "compliances must be non-negative");
    return c;
}

LoadDensity density(const json& j, const std::string& path) {
    if (j.is_number()) return LoadDensity::constant(j.get<double>());
    if (!j.is_array()) fail(path, "expected a number or a table of [xi, value] pairs");
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < j.size(); ++i) {
        const auto p = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2) fail(p, "expected [xi, value]");
        pts.emplace_back(num(j[i][0], p + "[0]"), num(j[i][1], p + "[1]"));
    }
    try {
        return LoadDensity::table(std::move(pts));
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

DistributedLoad member_load(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    DistributedLoad q;
    if (j.contains("px")) q.px = density(j["px"], path + ".px");
    if (j.contains("pz")) q.pz = density(j["pz"], path + ".pz");
    if (j.contains("m")) q.m = density(j["m"], path + ".m");
    q.scale = num_or(j, "scale", 1.0, path);
    if (j.contains("point_forces")) {
        const auto& pf = j["point_forces"];
        if (!pf.is_array()) fail(path + ".point_forces", "expected an array");
        for (size_t i = 0; i < pf.size(); ++i) {
            const auto p = path + ".point_forces[" + std::to_string(i) + "]";
            q.point_forces.push_back({num(need(pf[i], "position", p), p + ".position"), num_or(pf[i], "fx", 0.0, p),
                                      num_or(pf[i], "fz", 0.0, p)});
        }
    }
    return q;
}

DofRef dof_ref(const json& j, const std::string& path) {
    return {integer(need(j, "node", path), path + ".node"), dof_index(need(j, "dof", path), path + ".dof")};
}

FrameModel parse_frame(const json& root) {
    FrameModel m;
    if (!root.is_object()) fail("$", "expected an object");
    const auto& nodes = need(root, "nodes", "$");
    if (!nodes.is_array()) fail("nodes", "expected an array");
    for (size_t i = 0; i < nodes.size(); ++i) {
        const auto p = "nodes[" + std::to_string(i) + "]";
        const auto& jn = nodes[i];
        Node n;
        n.id = integer(need(jn, "id", p), p + ".id");
        n.x = num(need(jn, "x", p), p + ".x");
        n.z = num(need(jn, "z", p), p + ".z");
        if (jn.contains("dofs")) {
            const auto& d = jn["dofs"];
            if (!d.is_object()) fail(p + ".dofs", "expected an object");
            for (auto it = d.begin(); it != d.end(); ++it)
                n.dofs[dof_index(it.key(), p + ".dofs")] = dof_kind(it.value(), p + ".dofs." + it.key());
        }
        m.nodes.push_back(n);
    }
    const auto& elems = need(root, "elements", "$");
    if (!elems.is_array()) fail("elements", "expected an array");
    for (size_t i = 0; i < elems.size(); ++i) {
        const auto p = "elements[" + std::to_string(i) + "]";
        const auto& je = elems[i];
        ElementDef e;
        e.id = integer(need(je, "id", p), p + ".id");
        const auto& en = need(je, "nodes", p);
        if (!en.is_array() || en.size() != 2) fail(p + ".nodes", "expected [node_a, node_b]");
        e.node_a = integer(en[0], p + ".nodes[0]");
        e.node_b = integer(en[1], p + ".nodes[1]");
        e.model = je.contains("model") ? model_kind(je["model"], p + ".model") : ModelSelector::reissner;
        e.segments = integer(need(je, "segments", p), p + ".segments");
        if (e.segments < 1) fail(p + ".segments", "must be >= 1");
        if (je.contains("sections")) {
            const auto& s = je["sections"];
            if (!s.is_array()) fail(p + ".sections", "expected an array");
            for (size_t k = 0; k < s.size(); ++k) e.compliances.push_back(section(s[k], p + ".sections[" + std::to_string(k) + "]"));
            if (static_cast<int>(e.compliances.size()) != e.segments)
                fail(p + ".sections", "needs one entry per segment");
        } else {
            e.compliances.push_back(section(need(je, "section", p), p + ".section"));
        }
        if (je.contains("offsets")) {
            const auto& o = je["offsets"];
            if (!o.is_array() || o.size() != 2) fail(p + ".offsets", "expected [left, right]");
            e.offset_left = num(o[0], p + ".offsets[0]");
            e.offset_right = num(o[1], p + ".offsets[1]");
        }
        if (je.contains("load")) e.load = member_load(je["load"], p + ".load");
        m.elements.push_back(std::move(e));
    }
    if (root.contains("nodal_loads")) {
        const auto& nl = root["nodal_loads"];
        if (!nl.is_array()) fail("nodal_loads", "expected an array");
        for (size_t i = 0; i < nl.size(); ++i) {
            const auto p = "nodal_loads[" + std::to_string(i) + "]";
            m.nodal_loads.push_back({integer(need(nl[i], "node", p), p + ".node"),
                                     {num_or(nl[i], "fx", 0.0, p), num_or(nl[i], "fz", 0.0, p), num_or(nl[i], "m", 0.0, p)}});
        }
    }
    const auto& sch = need(root, "schedule", "$");
    if (!sch.is_array()) fail("schedule", "expected an array");
    if (sch.empty()) fail("schedule", "needs at least one step");
    for (size_t i = 0; i < sch.size(); ++i) {
        const auto p = "schedule[" + std::to_string(i) + "]";
        const auto& js = sch[i];
        if (!js.is_object()) fail(p, "expected an object");
        ScheduleStep s;
        s.load_increment = num_or(js, "load_increment", 0.0, p);
        s.repeat = js.contains("repeat") ? integer(js["repeat"], p + ".repeat") : 1;
        if (s.repeat < 1) fail(p + ".repeat", "must be >= 1");
        if (js.contains("prescribed")) {
            const auto& pr = js["prescribed"];
            if (!pr.is_array()) fail(p + ".prescribed", "expected an array");
            for (size_t k = 0; k < pr.size(); ++k) {
                const auto q = p + ".prescribed[" + std::to_string(k) + "]";
                const auto r = dof_ref(pr[k], q);
                s.prescribed.push_back({r.node, r.dof, num(need(pr[k], "value", q), q + ".value")});
            }
        }
        m.schedule.push_back(std::move(s));
    }
    if (root.contains("monitor")) {
        const auto& mo = root["monitor"];
        if (mo.contains("dofs")) {
            if (!mo["dofs"].is_array()) fail("monitor.dofs", "expected an array");
            for (size_t i = 0; i < mo["dofs"].size(); ++i)
                m.monitor.dofs.push_back(dof_ref(mo["dofs"][i], "monitor.dofs[" + std::to_string(i) + "]"));
        }
        if (mo.contains("diagonal")) m.monitor.diagonal = dof_ref(mo["diagonal"], "monitor.diagonal");
    }
    return m;
}

SolverOptions parse_solver(const json& root) {
    SolverOptions o;
    if (!root.contains("solver")) return o;
    const auto& s = root["solver"];
    const std::string p = "solver";
    if (!s.is_object()) fail(p, "expected an object");
    o.tol = num_or(s, "tol", o.tol, p);
    if (s.contains("max_iter")) o.max_iter = integer(s["max_iter"], p + ".max_iter");
    if (s.contains("max_cuts")) o.max_cuts = integer(s["max_cuts"], p + ".max_cuts");
    o.shooting.tol = num_or(s, "shooting_tol", o.shooting.tol, p);
    if (s.contains("shooting_max_iter")) o.shooting.max_iter = integer(s["shooting_max_iter"], p + ".shooting_max_iter");
    if (s.contains("stop_at_sign_change")) {
        if (!s["stop_at_sign_change"].is_boolean()) fail(p + ".stop_at_sign_change", "expected true or false");
        o.stop_at_sign_change = s["stop_at_sign_change"].get<bool>();
    }
    if (!(o.tol > 0) || o.max_iter < 1 || o.max_cuts < 0 || !(o.shooting.tol > 0) || o.shooting.max_iter < 1)
        fail(p, "tolerances must be positive and iteration limits >= 1");
    return o;
}

json density_out(const LoadDensity& d) {
    switch (d.kind()) {
        case LoadDensity::Kind::zero: return 0.0;
        case LoadDensity::Kind::constant: return d.constant_value();
        case LoadDensity::Kind::table: {
            json a = json::array();
            for (const auto& [x, v] : d.table_points()) a.push_back({x, v});
            return a;
        }
        case LoadDensity::Kind::function: break;
    }
    throw InputError("function-valued load densities cannot be serialized");
}

json section_out(const SectionCompliances& c) {
    return {{"axial", c.c_axial}, {"shear", c.c_shear}, {"bend", c.c_bend}};
}

json frame_out(const FrameModel& m) {
    json root;
    json nodes = json::array();
    for (const auto& n : m.nodes) {
        json jd = json::object();
        for (int d = 0; d < 3; ++d)
            jd[kDofNames[d]] = n.dofs[d] == DofKind::free ? "free" : n.dofs[d] == DofKind::fixed ? "fixed" : "prescribed";
        nodes.push_back({{"id", n.id}, {"x", n.x}, {"z", n.z}, {"dofs", jd}});
    }
    root["nodes"] = nodes;
    json elems = json::array();
    const char* models[] = {"reissner", "ziegler", "kirchhoff", "euler"};
    for (const auto& e : m.elements) {
        json je = {{"id", e.id},
                   {"nodes", {e.node_a, e.node_b}},
                   {"model", models[static_cast<int>(e.model)]},
                   {"segments", e.segments},
                   {"offsets", {e.offset_left, e.offset_right}}};
        if (e.compliances.size() == 1) {
            je["section"] = section_out(e.compliances.front());
        } else {
            json s = json::array();
            for (const auto& c : e.compliances) s.push_back(section_out(c));
            je["sections"] = s;
        }
        const auto& q = e.load;
        json jq = json::object();
        if (!q.px.is_zero()) jq["px"] = density_out(q.px);
        if (!q.pz.is_zero()) jq["pz"] = density_out(q.pz);
        if (!q.m.is_zero()) jq["m"] = density_out(q.m);
        if (!q.point_forces.empty()) {
            json pf = json::array();
            for (const auto& f : q.point_forces) pf.push_back({{"position", f.position}, {"fx", f.fx}, {"fz", f.fz}});
            jq["point_forces"] = pf;
        }
        if (q.scale != 1.0) jq["scale"] = q.scale;
        if (!jq.empty()) je["load"] = jq;
        elems.push_back(je);
    }
    root["elements"] = elems;
    json nl = json::array();
    for (const auto& l : m.nodal_loads) nl.push_back({{"node", l.node}, {"fx", l.f.fx}, {"fz", l.f.fz}, {"m", l.f.m}});
    root["nodal_loads"] = nl;
    json sch = json::array();
    for (const auto& s : m.schedule) {
        json js = {{"load_increment", s.load_increment}, {"repeat", s.repeat}};
        json pr = json::array();
        for (const auto& p : s.prescribed) pr.push_back({{"node", p.node}, {"dof", kDofNames[p.dof]}, {"value", p.value}});
        js["prescribed"] = pr;
        sch.push_back(js);
    }
    root["schedule"] = sch;
    json mo = json::object();
    json md = json::array();
    for (const auto& d : m.monitor.dofs) md.push_back({{"node", d.node}, {"dof", kDofNames[d.dof]}});
    mo["dofs"] = md;
    if (m.monitor.diagonal) mo["diagonal"] = {{"node", m.monitor.diagonal->node}, {"dof", kDofNames[m.monitor.diagonal->dof]}};
    root["monitor"] = mo;
    return root;
}

std::string line_col(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

ModelFile parse_model(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    ModelFile mf;
    mf.model = parse_frame(root);
    mf.solver = parse_solver(root);
    mf.model.validate();
    return mf;
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string serialize_model(const FrameModel& m, int indent) { return frame_out(m).dump(indent); }

std::string serialize_model(const ModelFile& mf, int indent) {
    json root = frame_out(mf.model);
    const auto& o = mf.solver;
    root["solver"] = {{"tol", o.tol},
                      {"max_iter", o.max_iter},
                      {"max_cuts", o.max_cuts},
                      {"shooting_tol", o.shooting.tol},
                      {"shooting_max_iter", o.shooting.max_iter},
                      {"stop_at_sign_change", o.stop_at_sign_change}};
    return root.dump(indent);
}

}  // namespace fdbeam
