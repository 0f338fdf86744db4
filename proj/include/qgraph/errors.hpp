#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

// Error taxonomy mirrored by the CLI exit codes:
// parse = 2, validation = 3, numeric = 4, undetermined profile = 5.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A secular evaluation hit a bond Dirichlet eigenvalue; callers should use
// the column-scaled (pole-free) variant instead.
struct PoleError : NumericError {
  using NumericError::NumericError;
};

// Leading coefficient or zero order could not be determined.
struct ProfileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qgraph
