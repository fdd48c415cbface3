#pragma once

#include <stdexcept>
#include <string>

namespace gestdyn {

// Invalid parameter values, malformed configs, bad input files.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Integration stalled: internal step size collapsed below the floor.
// Distinct from guard-triggered divergence, which is reported in-band
// via Trajectory::status.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gestdyn
