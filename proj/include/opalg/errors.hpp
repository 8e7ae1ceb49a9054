#pragma once

#include <stdexcept>
#include <string>

namespace opalg {

/// Malformed or inconsistent input: shape mismatches, unresolved names,
/// non-invariant subspaces, parse failures. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A built-in cross-check failed: two independent computations of the same
/// object disagreed, or a report violated a known implication. The CLI maps
/// this to exit code 1.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace opalg
