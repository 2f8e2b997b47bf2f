#pragma once

#include <stdexcept>
#include <string>

namespace immig {

/// Invalid argument to a library operation (reversed interval, nonpositive rate, ...).
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Query outside the simulated or truncated range.
class RangeError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Missing or inconsistent model/experiment configuration.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operation invoked on a state where it is undefined.
class StateError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// A numerical certificate (truncation tail, rejection bound) failed.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A model diagnostic rules out the requested computation.
class DiagnosticError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace immig
