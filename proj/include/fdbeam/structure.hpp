#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fdbeam/beam_core.hpp"
#include "fdbeam/dense_linalg.hpp"
#include "fdbeam/element.hpp"

namespace fdbeam {

enum class DofKind { free, fixed, prescribed };
enum class ModelSelector { reissner, ziegler, kirchhoff, euler };

// dof index within a node: 0 = u_x, 1 = u_z, 2 = Phi
struct Node {
    int id = 0;
    double x = 0.0, z = 0.0;
    std::array<DofKind, 3> dofs{DofKind::free, DofKind::free, DofKind::free};
    bool operator==(const Node&) const = default;
};

struct ElementDef {
    int id = 0;
    int node_a = 0, node_b = 0;
    ModelSelector model = ModelSelector::reissner;
    int segments = 1;
    std::vector<SectionCompliances> compliances;  // 1 or per segment, as given
    double offset_left = 0.0, offset_right = 0.0;
    DistributedLoad load;  // reference member load, scaled by the load factor

    bool operator==(const ElementDef&) const = default;
};

struct NodalLoad {
    int node = 0;
    GeneralizedForces f;
    bool operator==(const NodalLoad&) const = default;
};

struct PrescribedIncrement {
    int node = 0;
    int dof = 0;
    double value = 0.0;
    bool operator==(const PrescribedIncrement&) const = default;
};

struct ScheduleStep {
    double load_increment = 0.0;
    std::vector<PrescribedIncrement> prescribed;
    int repeat = 1;
    // abscissa advance used by detect_critical; default from the increments
    double control_increment() const;
    bool operator==(const ScheduleStep&) const = default;
};

struct DofRef {
    int node = 0;
    int dof = 0;
    bool operator==(const DofRef&) const = default;
};

struct Monitor {
    std::vector<DofRef> dofs;            // reported in trace output
    std::optional<DofRef> diagonal;      // watch this tangent diagonal instead of the lowest eigenvalue
    bool operator==(const Monitor&) const = default;
};

struct FrameModel {
    std::vector<Node> nodes;
    std::vector<ElementDef> elements;
    std::vector<NodalLoad> nodal_loads;
    std::vector<ScheduleStep> schedule;
    Monitor monitor;

    void validate() const;
    int node_index(int id) const;
    bool operator==(const FrameModel&) const = default;
};

// Euler elements get tiny axial/shear compliances so the element Jacobian stays regular
// in the straight state: c = kEulerPenalty * c_bend * L^2.
inline constexpr double kEulerPenalty = 1e-9;

struct StepRecord {
    int step = 0;
    double load_factor = 0.0;
    double control = 0.0;
    std::vector<double> dof_values;   // all DOFs, node-major (u_x, u_z, Phi)
    double lowest_eigenvalue = 0.0;
    double monitored = 0.0;           // diagonal coefficient if requested, else the lowest eigenvalue
    std::vector<double> reactions;    // at constrained DOFs, same order as constrained_dofs()
    std::vector<std::array<double, 6>> end_forces;  // per element: X_a, Z_a, M_a, X_b, Z_b, M_b
    int iterations = 0;
};

struct FrameState {
    std::vector<double> u;  // all DOFs
    std::vector<ElementState> element_states;
    double load_factor = 0.0;
    double control = 0.0;
    double lowest_eigenvalue = 0.0;
    double monitored = 0.0;
    double tangent_scale = 0.0;
    int iterations = 0;
    std::vector<double> reactions;
    std::vector<StepRecord> history;

    double dof(const FrameModel& m, int node_id, int dof) const;
};

struct SolverOptions {
    double tol = 1e-10;
    int max_iter = 40;
    int max_cuts = 8;  // step bisection depth on failure
    ShootingOptions shooting{1e-12, 40};
    bool stop_at_sign_change = false;  // run() ends after the monitored quantity changes sign
};

class FrameSolver {
public:
    explicit FrameSolver(FrameModel model, SolverOptions opt = {});

    const FrameModel& model() const { return model_; }
    FrameState initial_state() const;  // unloaded; converged without iterating
    FrameState solve_step(const FrameState& s, const ScheduleStep& step) const;
    // all schedule steps, history starts with the initial record
    FrameState run() const;
    FrameState perturb_and_branch(const FrameState& s, const std::vector<NodalLoad>& perturbation) const;

    // assembled free-DOF tangent at a converged state
    DenseMatrix free_tangent(const FrameState& s) const;
    std::vector<int> free_dofs() const { return free_; }
    std::vector<int> constrained_dofs() const { return constrained_; }
    int global_dof(int node_id, int dof) const;
    const BeamElement& beam(int e) const { return beams_[e]; }
    const PartialResultants& resultants(int e) const { return res_[e]; }
    Formulation formulation(int e) const { return forms_[e]; }
    double characteristic_length() const { return lc_; }

private:
    struct Eval;
    Eval evaluate(const std::vector<double>& u, double lambda, const std::vector<ElementState>& guess,
                  const std::vector<NodalLoad>& extra) const;
    FrameState newton(const FrameState& start, std::vector<double> u, double lambda,
                      const std::vector<NodalLoad>& extra) const;
    FrameState advance(const FrameState& s, const ScheduleStep& step, double frac, int depth) const;
    void finish(FrameState& st, const Eval& ev) const;

    FrameModel model_;
    SolverOptions opt_;
    std::vector<BeamElement> beams_;
    std::vector<PartialResultants> res_;
    std::vector<Formulation> forms_;
    std::vector<std::array<int, 2>> ends_;  // node indices
    std::vector<int> free_, constrained_;
    std::vector<double> fref_;  // reference nodal loads, all DOFs
    double lc_ = 1.0;
};

FrameState solve_step(const FrameModel& model, const FrameState& state, const ScheduleStep& step);

// linear interpolation of the monitored quantity across its first sign change
std::optional<double> detect_critical(const std::vector<StepRecord>& history);

FrameState perturb_and_branch(const FrameModel& model, const FrameState& state,
                              const std::vector<NodalLoad>& perturbation);

// compliances actually used in the sweeps for an element definition
BeamElement make_beam(const FrameModel& m, const ElementDef& e);

}  // namespace fdbeam
