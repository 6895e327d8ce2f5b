#include "fdbeam/structure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "fdbeam/errors.hpp"

namespace fdbeam {

namespace {

StepRecord make_record(const FrameState& st, int step) {
    StepRecord rec;
    rec.step = step;
    rec.load_factor = st.load_factor;
    rec.control = st.control;
    rec.dof_values = st.u;
    rec.lowest_eigenvalue = st.lowest_eigenvalue;
    rec.monitored = st.monitored;
    rec.reactions = st.reactions;
    for (const auto& e : st.element_states)
        rec.end_forces.push_back({e.f_a.fx, e.f_a.fz, e.f_a.m, e.f_b.fx, e.f_b.fz, e.f_b.m});
    rec.iterations = st.iterations;
    return rec;
}

}  // namespace

double ScheduleStep::control_increment() const {
    if (load_increment != 0.0) return std::abs(load_increment);
    if (!prescribed.empty()) return std::abs(prescribed.front().value);
    return 0.0;
}

int FrameModel::node_index(int id) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id) return static_cast<int>(i);
    throw InputError("unknown node id " + std::to_string(id));
}

void FrameModel::validate() const {
    if (nodes.empty()) throw InputError("model has no nodes");
    if (elements.empty()) throw InputError("model has no elements");
    if (schedule.empty()) throw InputError("schedule needs at least one step");
    std::set<int> ids;
    bool constrained = false;
    for (const auto& n : nodes) {
        if (!ids.insert(n.id).second) throw InputError("duplicate node id " + std::to_string(n.id));
        if (!std::isfinite(n.x) || !std::isfinite(n.z)) throw InputError("node coordinates must be finite");
        for (auto k : n.dofs) constrained = constrained || k != DofKind::free;
    }
    if (!constrained) throw InputError("structure has no constrained DOF");
    std::set<int> eids;
    for (const auto& e : elements) {
        if (!eids.insert(e.id).second) throw InputError("duplicate element id " + std::to_string(e.id));
        const auto& a = nodes[node_index(e.node_a)];
        const auto& b = nodes[node_index(e.node_b)];
        if (std::hypot(b.x - a.x, b.z - a.z) <= 0.0)
            throw InputError("element " + std::to_string(e.id) + " has zero length");
        if (e.segments < 1) throw InputError("element " + std::to_string(e.id) + " needs segments >= 1");
    }
    for (const auto& l : nodal_loads) node_index(l.node);
    auto check_dof = [&](const DofRef& r) {
        if (r.dof < 0 || r.dof > 2) throw InputError("dof index must be 0, 1 or 2");
        node_index(r.node);
    };
    for (const auto& d : monitor.dofs) check_dof(d);
    if (monitor.diagonal) {
        check_dof(*monitor.diagonal);
        if (nodes[node_index(monitor.diagonal->node)].dofs[monitor.diagonal->dof] != DofKind::free)
            throw InputError("diagonal monitor must reference a free DOF");
    }
    for (const auto& s : schedule) {
        if (s.repeat < 1) throw InputError("schedule repeat must be >= 1");
        for (const auto& p : s.prescribed) {
            check_dof({p.node, p.dof});
            if (nodes[node_index(p.node)].dofs[p.dof] != DofKind::prescribed)
                throw InputError("prescribed increment on node " + std::to_string(p.node) +
                                 " targets a DOF that is not marked prescribed");
        }
    }
}

double FrameState::dof(const FrameModel& m, int node_id, int d) const {
    return u.at(3 * m.node_index(node_id) + d);
}

BeamElement make_beam(const FrameModel& m, const ElementDef& e) {
    const auto& a = m.nodes[m.node_index(e.node_a)];
    const auto& b = m.nodes[m.node_index(e.node_b)];
    BeamElement beam;
    beam.length = std::hypot(b.x - a.x, b.z - a.z);
    beam.inclination = std::atan2(b.z - a.z, b.x - a.x);
    beam.segments = e.segments;
    beam.offset_left = e.offset_left;
    beam.offset_right = e.offset_right;
    beam.compliances = e.compliances;
    for (auto& c : beam.compliances) {
        if (e.model == ModelSelector::kirchhoff) c.c_shear = 0.0;
        if (e.model == ModelSelector::euler) {
            const double pen = kEulerPenalty * c.c_bend * beam.length * beam.length;
            c.c_axial = pen;
            c.c_shear = pen;
        }
    }
    beam.validate();
    return beam;
}

FrameSolver::FrameSolver(FrameModel model, SolverOptions opt) : model_(std::move(model)), opt_(opt) {
    model_.validate();
    double lsum = 0.0;
    for (const auto& e : model_.elements) {
        beams_.push_back(make_beam(model_, e));
        lsum += beams_.back().length;
        res_.push_back(precompute_partial_resultants(e.load, beams_.back()));
        forms_.push_back(e.model == ModelSelector::ziegler ? Formulation::ziegler : Formulation::reissner);
        ends_.push_back({model_.node_index(e.node_a), model_.node_index(e.node_b)});
    }
    lc_ = lsum / beams_.size();
    for (size_t n = 0; n < model_.nodes.size(); ++n)
        for (int d = 0; d < 3; ++d) {
            const int g = static_cast<int>(3 * n + d);
            (model_.nodes[n].dofs[d] == DofKind::free ? free_ : constrained_).push_back(g);
        }
    fref_.assign(3 * model_.nodes.size(), 0.0);
    for (const auto& l : model_.nodal_loads) {
        const int n = model_.node_index(l.node);
        fref_[3 * n] += l.f.fx;
        fref_[3 * n + 1] += l.f.fz;
        fref_[3 * n + 2] += l.f.m;
    }
}

int FrameSolver::global_dof(int node_id, int dof) const { return 3 * model_.node_index(node_id) + dof; }

struct FrameSolver::Eval {
    std::vector<ElementState> states;
    std::vector<double> r;  // all DOFs
    DenseMatrix k;          // all DOFs
    double norm = 0.0;
};

FrameSolver::Eval FrameSolver::evaluate(const std::vector<double>& u, double lambda,
                                        const std::vector<ElementState>& guess,
                                        const std::vector<NodalLoad>& extra) const {
    const int nd = static_cast<int>(u.size());
    Eval ev;
    ev.r.assign(nd, 0.0);
    ev.k = DenseMatrix(nd, nd);
    double fscale = 0.0;
    for (size_t e = 0; e < beams_.size(); ++e) {
        const auto& beam = beams_[e];
        const int na = ends_[e][0], nb = ends_[e][1];
        const auto& A = model_.nodes[na];
        const auto& B = model_.nodes[nb];
        const GeneralizedCoordinates ra{A.x + u[3 * na], A.z + u[3 * na + 1], u[3 * na + 2] - beam.inclination};
        const GeneralizedCoordinates rb{B.x + u[3 * nb], B.z + u[3 * nb + 1], u[3 * nb + 2] - beam.inclination};
        const auto res = res_[e].scaled(lambda);
        const GeneralizedForces g = e < guess.size() ? guess[e].f_a : GeneralizedForces{};
        auto st = end_forces(ra, rb, beam, res, forms_[e], g, opt_.shooting);
        const auto kt = tangent_stiffness(st, res.has_load());
        const int map[6] = {3 * na, 3 * na + 1, 3 * na + 2, 3 * nb, 3 * nb + 1, 3 * nb + 2};
        const double f[6] = {st.f_a.fx, st.f_a.fz, st.f_a.m, st.f_b.fx, st.f_b.fz, st.f_b.m};
        for (int i = 0; i < 6; ++i) {
            ev.r[map[i]] += f[i];
            fscale = std::max(fscale, std::abs(f[i]) / (i % 3 == 2 ? lc_ : 1.0));
            for (int j = 0; j < 6; ++j) ev.k(map[i], map[j]) += kt.k[i][j];
        }
        ev.states.push_back(std::move(st));
    }
    for (int i = 0; i < nd; ++i) {
        ev.r[i] -= lambda * fref_[i];
        fscale = std::max(fscale, std::abs(lambda * fref_[i]) / (i % 3 == 2 ? lc_ : 1.0));
    }
    for (const auto& l : extra) {
        const int n = model_.node_index(l.node);
        const double f[3] = {l.f.fx, l.f.fz, l.f.m};
        for (int d = 0; d < 3; ++d) {
            ev.r[3 * n + d] -= f[d];
            fscale = std::max(fscale, std::abs(f[d]) / (d == 2 ? lc_ : 1.0));
        }
    }
    double s = 0.0;
    for (int g : free_) {
        const double w = ev.r[g] / (g % 3 == 2 ? lc_ : 1.0);
        s += w * w;
    }
    s = std::sqrt(s);
    ev.norm = s == 0.0 ? 0.0 : s / std::max(fscale, 1e-300);
    return ev;
}

void FrameSolver::finish(FrameState& st, const Eval& ev) const {
    st.element_states = ev.states;
    st.reactions.clear();
    for (int g : constrained_) st.reactions.push_back(ev.r[g]);
    const int nf = static_cast<int>(free_.size());
    if (nf == 0) {
        st.lowest_eigenvalue = st.monitored = st.tangent_scale = NAN;
        return;
    }
    DenseMatrix kf(nf, nf);
    double scale = 0.0;
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nf; ++j) kf(i, j) = ev.k(free_[i], free_[j]);
    for (int i = 0; i < nf; ++i) scale = std::max(scale, std::abs(kf(i, i)));
    st.tangent_scale = scale;
    st.lowest_eigenvalue = sym_lowest_eigenvalue(kf).value;
    st.monitored = st.lowest_eigenvalue;
    if (model_.monitor.diagonal) {
        const int g = global_dof(model_.monitor.diagonal->node, model_.monitor.diagonal->dof);
        st.monitored = ev.k(g, g);
    }
}

FrameState FrameSolver::newton(const FrameState& start, std::vector<double> u, double lambda,
                               const std::vector<NodalLoad>& extra) const {
    const int nf = static_cast<int>(free_.size());
    std::vector<ElementState> guess = start.element_states;
    std::vector<double> hist;
    double step_norm = INFINITY;
    for (int it = 0; it <= opt_.max_iter; ++it) {
        Eval ev = evaluate(u, lambda, guess, extra);
        hist.push_back(ev.norm);
        if (!std::isfinite(ev.norm)) break;
        // second test: the correction is at round-off level (tiny loads on stiff members)
        if (ev.norm <= opt_.tol || step_norm <= 1e-14) {
            FrameState st;
            st.u = std::move(u);
            st.load_factor = lambda;
            st.control = start.control;
            st.iterations = it;
            st.history = start.history;
            finish(st, ev);
            return st;
        }
        if (it == opt_.max_iter) break;
        DenseMatrix kf(nf, nf);
        std::vector<double> rf(nf);
        for (int i = 0; i < nf; ++i) {
            rf[i] = -ev.r[free_[i]];
            for (int j = 0; j < nf; ++j) kf(i, j) = ev.k(free_[i], free_[j]);
        }
        const auto du = lu_solve(kf, rf);
        double un = 0.0, dn = 0.0;
        for (int i = 0; i < nf; ++i) {
            const double w = free_[i] % 3 == 2 ? 1.0 : 1.0 / lc_;
            un = std::max(un, std::abs(u[free_[i]]) * w);
            dn = std::max(dn, std::abs(du[i]) * w);
            u[free_[i]] += du[i];
        }
        step_norm = dn / std::max(1.0, un);
        guess = std::move(ev.states);
    }
    throw NonConvergenceError("global Newton did not converge", hist.empty() ? NAN : hist.back(), hist);
}

FrameState FrameSolver::initial_state() const {
    FrameState st;
    st.u.assign(3 * model_.nodes.size(), 0.0);
    return newton(st, st.u, 0.0, {});
}

FrameState FrameSolver::advance(const FrameState& s, const ScheduleStep& step, double frac, int depth) const {
    std::vector<double> u = s.u;
    for (const auto& p : step.prescribed) u[global_dof(p.node, p.dof)] += frac * p.value;
    const double lambda = s.load_factor + frac * step.load_increment;
    try {
        return newton(s, std::move(u), lambda, {});
    } catch (const NonConvergenceError&) {
        if (depth >= opt_.max_cuts) throw;
    } catch (const SingularMatrixError&) {
        if (depth >= opt_.max_cuts) throw;
    }
    FrameState half = advance(s, step, frac / 2, depth + 1);
    return advance(half, step, frac / 2, depth + 1);
}

FrameState FrameSolver::solve_step(const FrameState& s, const ScheduleStep& step) const {
    FrameState st = advance(s, step, 1.0, 0);
    st.control = s.control + step.control_increment();
    st.history = s.history;
    st.history.push_back(make_record(st, s.history.empty() ? 1 : s.history.back().step + 1));
    return st;
}

FrameState FrameSolver::run() const {
    FrameState st = initial_state();
    st.history.push_back(make_record(st, 0));
    for (const auto& step : model_.schedule)
        for (int k = 0; k < step.repeat; ++k) {
            try {
                st = solve_step(st, step);
            } catch (NonConvergenceError& e) {
                throw NonConvergenceError("step " + std::to_string(st.history.back().step + 1) + ": " + e.what(),
                                          e.last_value(), e.history());
            } catch (BifurcationSignal& e) {
                throw BifurcationSignal("step " + std::to_string(st.history.back().step + 1) + ": " + e.what());
            } catch (SingularMatrixError& e) {
                throw SingularMatrixError("step " + std::to_string(st.history.back().step + 1) + ": " + e.what());
            }
            if (opt_.stop_at_sign_change && detect_critical(st.history)) return st;
        }
    return st;
}

FrameState FrameSolver::perturb_and_branch(const FrameState& s, const std::vector<NodalLoad>& perturbation) const {
    FrameState p = newton(s, s.u, s.load_factor, perturbation);
    try {
        FrameState r = newton(p, p.u, p.load_factor, {});
        r.control = s.control;
        return r;
    } catch (const NonConvergenceError& e) {
        throw NonConvergenceError(std::string("branch failure after removing the perturbation: ") + e.what(),
                                  e.last_value(), e.history());
    }
}

DenseMatrix FrameSolver::free_tangent(const FrameState& s) const {
    Eval ev = evaluate(s.u, s.load_factor, s.element_states, {});
    const int nf = static_cast<int>(free_.size());
    DenseMatrix kf(nf, nf);
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nf; ++j) kf(i, j) = ev.k(free_[i], free_[j]);
    return kf;
}

FrameState solve_step(const FrameModel& model, const FrameState& state, const ScheduleStep& step) {
    return FrameSolver(model).solve_step(state, step);
}

FrameState perturb_and_branch(const FrameModel& model, const FrameState& state,
                              const std::vector<NodalLoad>& perturbation) {
    return FrameSolver(model).perturb_and_branch(state, perturbation);
}

std::optional<double> detect_critical(const std::vector<StepRecord>& history) {
    for (size_t k = 1; k < history.size(); ++k) {
        const double v0 = history[k - 1].monitored, v1 = history[k].monitored;
        if (!std::isfinite(v0) || !std::isfinite(v1)) continue;
        if ((v0 > 0.0 && v1 <= 0.0) || (v0 < 0.0 && v1 >= 0.0)) {
            const double c0 = history[k - 1].control, c1 = history[k].control;
            return c0 + (c1 - c0) * v0 / (v0 - v1);
        }
    }
    return std::nullopt;
}

}  // namespace fdbeam
