#pragma once

#include <stdexcept>
#include <string>

namespace roughpath {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IntervalError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Carries the diagnostic history of a failed iteration (dyadic sums, Picard).
struct ConvergenceError : std::runtime_error {
    std::vector<double> history;
    ConvergenceError(const std::string& msg, std::vector<double> hist = {})
        : std::runtime_error(msg), history(std::move(hist)) {}
};

}  // namespace roughpath
