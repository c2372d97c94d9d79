#pragma once

#include <stdexcept>
#include <string>

namespace ktorus {

/// Shape mismatch: non-square input, incompatible products, ragged data.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::domain_error {
  public:
    SingularMatrixError() : std::domain_error("matrix is singular") {}
    using std::domain_error::domain_error;
};

/// Exterior grade outside [0, d] (or outside the range an identity is stated for).
class GradeError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// A proven identity failed on concrete data. Always an implementation bug.
class ConsistencyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace ktorus
