#pragma once

#include <string>

#include "fdbeam/structure.hpp"

namespace fdbeam {

struct ModelFile {
    FrameModel model;
    SolverOptions solver;
};

// JSON text -> model; InputError carrying "line L, column C" or a field path like
// "elements[1].segments" on failure. Empty schedules are rejected.
ModelFile parse_model(const std::string& text);
ModelFile load_model(const std::string& path);

// exact round trip for everything except function-valued load densities
std::string serialize_model(const ModelFile& m, int indent = 2);
std::string serialize_model(const FrameModel& m, int indent = 2);

}  // namespace fdbeam
