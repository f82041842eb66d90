#pragma once

#include <stdexcept>
#include <string>

namespace epikit {

/// Raised when a trajectory or field develops NaN/inf components.
struct NonFiniteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// State left the admissible region by more than the numerical slack.
struct NegativeStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NegativeDensityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Eigen decomposition of the linearized system has a (near) repeated root.
struct DegenerateSpectrumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BadResolutionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InfeasibleStateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidParamsError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& reason)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + reason), line(line_no) {}
};

struct EmptyFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooShortError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace epikit
