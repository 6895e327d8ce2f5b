#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fdbeam/model_io.hpp"

namespace fdbeam::cli {

// 9 significant digits, '.' separator, no locale; NaN prints as an empty field
std::string format_number(double v);

// per-step history CSV; shape_out (optional) receives midpoint data of the final state
void cmd_trace(const ModelFile& mf, std::ostream& out, std::ostream* shape_out = nullptr);

// segments, value, rel_error_percent (vs the finest run), observed order
void cmd_converge(const std::string& case_id, std::vector<int> segments, std::ostream& out);

enum class BuckleMode { compression, tension };

struct BuckleReport {
    bool found = false;
    double numerical = 0.0;  // critical strain
    std::optional<double> analytical;
    double relative_deviation = 0.0;
    std::string note;
};

// increment overrides the control increment per step (strain for displacement control)
BuckleReport cmd_buckle(const ModelFile& mf, BuckleMode mode, std::optional<double> increment);
void print_buckle(const BuckleReport& r, std::ostream& out);

void cmd_reference(const std::string& table, std::ostream& out);
std::vector<std::string> reference_tables();

}  // namespace fdbeam::cli
