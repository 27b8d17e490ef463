#ifndef HAWKTELE_ERROR_HPP
#define HAWKTELE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hawktele {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside its documented domain (bad strength, unknown mode, dimension mismatch...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The protocol keeps no amplitude (N = 0), e.g. p = 1 with an optimal post-measurement policy.
class DegenerateProtocol : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hawktele

#endif  // HAWKTELE_ERROR_HPP
