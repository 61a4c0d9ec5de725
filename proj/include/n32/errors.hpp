#pragma once

#include <stdexcept>
#include <string>

namespace n32 {

/// Configuration is outside the region where a formula is defined
/// (r1 = 0 in the radial SOS, |gamma|^2 = 0 in the first-proof certificate).
class DegenerateError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Kernel value below the resolvable floor; log-derivatives are meaningless there.
class UnderflowError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A numerical engine did not meet its own convergence gate.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An audited identity or inequality failed beyond tolerance.
class ViolationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace n32
