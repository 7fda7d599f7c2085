#ifndef MACKEYALG_ERROR_HPP
#define MACKEYALG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mackeyalg {

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a mathematical requirement (non-equivariant map,
/// ill-defined homomorphism, failed axiom, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A configured size bound was exceeded.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// A caller omitted a truncation parameter that the operation requires.
class MissingTruncation : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

#define MACKEYALG_ASSERT(cond, msg)                                        \
  do {                                                                     \
    if (!(cond)) throw ::mackeyalg::InternalError(std::string("internal: ") + (msg)); \
  } while (0)

}  // namespace mackeyalg

#endif  // MACKEYALG_ERROR_HPP
