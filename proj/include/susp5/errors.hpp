#pragma once

#include <stdexcept>
#include <string>

namespace susp5 {

/// Query outside the tabulated facts (mapping groups, K-tables, cohomotopy).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A composite g o f whose value is not given by any stored relation.
class UnknownCompositeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data that contradicts the flags it comes with (e.g. an eta-type top
/// attaching map on a spin manifold).
class ContradictionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A descriptor that fails validation; the message lists every violation.
class InvalidDescriptorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace susp5
