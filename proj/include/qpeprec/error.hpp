#pragma once

#include <stdexcept>

namespace qpeprec {

// Bad input files, schemas, or arguments. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric precondition or invariant failed (degenerate state, branch
// ambiguity, size caps). The CLI maps this to exit code 1.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qpeprec
