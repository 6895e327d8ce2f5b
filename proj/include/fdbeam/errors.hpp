#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fdbeam {

// bad user input (model file, parameters out of range, ...)
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// caller broke a precondition of an operation
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// element Jacobi matrix G became singular: the element itself sits at a critical state
class BifurcationSignal : public SingularMatrixError {
public:
    using SingularMatrixError::SingularMatrixError;
};

// vanishing slope of the shear-angle condition in the Ziegler linearization
class SingularLinearization : public SingularMatrixError {
public:
    using SingularMatrixError::SingularMatrixError;
};

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double last_value,
                        std::vector<double> history = {})
        : std::runtime_error(what), last_value_(last_value), history_(std::move(history)) {}
    double last_value() const { return last_value_; }
    const std::vector<double>& history() const { return history_; }

private:
    double last_value_;
    std::vector<double> history_;
};

}  // namespace fdbeam
