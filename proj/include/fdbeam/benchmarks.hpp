#pragma once

#include <string>
#include <vector>

#include "fdbeam/structure.hpp"

namespace fdbeam::bench {

enum class Quantity {
    stiffness,        // F L^2 / (w EI)
    deflection,       // w / L at the monitored node
    tip_deviation,    // |tip - closed form| / L
    peak_force,       // first limit point of the driving reaction
    critical_strain,  // interpolated sign change of the monitor
};

struct CaseInfo {
    std::string id;
    std::string description;
    Quantity quantity = Quantity::deflection;
    int default_segments = 32;
};

const std::vector<CaseInfo>& cases();
const CaseInfo& case_info(const std::string& id);  // InputError for unknown ids

// model of a built-in case at the given segment count per element
FrameModel build_case(const std::string& id, int segments);
SolverOptions case_options(const std::string& id);

struct CaseResult {
    double value = 0.0;
    FrameState state;
    bool found = true;  // false when a critical case saw no sign change
};

CaseResult run_case(const std::string& id, int segments);
double case_value(const std::string& id, int segments);

// reference value of the quantity from closed-form solutions, NaN where none exists
double analytic_value(const std::string& id);

// one load-displacement point per step for cases driven by a prescribed DOF
struct CurvePoint {
    double control = 0.0;
    double force = 0.0;
};
std::vector<CurvePoint> driving_curve(const std::string& id, const FrameState& st);

}  // namespace fdbeam::bench
