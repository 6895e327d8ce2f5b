#pragma once
// small helpers shared by the unit tests

#include <algorithm>
#include <cmath>
#include <random>

#include "fdbeam/beam_core.hpp"

namespace testing_support {

inline double rel_err(double a, double b, double floor = 1e-300) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long seed) : gen(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
};

// rectangular section with EI = 1: EA = 12 / h^2
inline fdbeam::SectionCompliances rect(double h, double gamma = 1.0 / 3.0) {
    const double ea = 12.0 / (h * h);
    return fdbeam::SectionCompliances::from_stiffness(ea, gamma * ea, 1.0);
}

}  // namespace testing_support
