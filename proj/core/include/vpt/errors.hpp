#pragma once

#include <stdexcept>

namespace vpt {

/// Failure of a numerical procedure on valid input: missing roots, blow-up,
/// non-convergence, divergent integrals. Usage errors use std::invalid_argument.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vpt
