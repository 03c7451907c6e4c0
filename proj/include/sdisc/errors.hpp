#pragma once

#include <stdexcept>

namespace sdisc {

// Mismatched generator counts or nonconformable matrix shapes.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Body not invertible (or condition number beyond the configured limit).
struct SingularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Principal-branch precondition violated (non-positive body spectrum).
struct BranchError : std::domain_error {
  using std::domain_error::domain_error;
};

// Parity / declared-type misuse.
struct ParityError : std::domain_error {
  using std::domain_error::domain_error;
};

// Iteration failed to converge within the configured budget.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Jet nesting deeper than the compiled maximum.
struct DepthError : std::logic_error {
  using std::logic_error::logic_error;
};

// Malformed fixture or config input.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sdisc
