#ifndef SVMLASSO_ERRORS_HPP
#define SVMLASSO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace svmlasso {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not line up (matrix vs vector, even/odd block sizes, ...).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation is violated by the caller.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed: non-finite entries, bad labels, non-symmetric
/// kernels, unparsable files.
class DataError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require_dims(bool ok, const std::string &what) {
  if (!ok) throw DimensionMismatch(what);
}

inline void require(bool ok, const std::string &what) {
  if (!ok) throw PreconditionViolation(what);
}

}  // namespace detail
}  // namespace svmlasso

#endif  // SVMLASSO_ERRORS_HPP
