#pragma once

#include <stdexcept>
#include <string>

namespace madic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A word, vertex or argument does not fit the group parameters.
class ParameterMismatch : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A configured cap (vertices, ball elements, search budget) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A bounded search finished without finding what it was looking for.
class NotFound : public Error {
 public:
  using Error::Error;
};

// An engine-produced equality failed to verify.
class CertificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace madic
