#pragma once

#include <stdexcept>
#include <string>

namespace stylo {

// Malformed or inconsistent input: tree text, grammar files, manifests,
// argument combinations. The CLI maps these to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degenerate linear algebra (all-zero data, empty classes at projection
// time). The CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stylo
