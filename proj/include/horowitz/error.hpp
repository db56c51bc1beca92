#ifndef HOROWITZ_ERROR_HPP_
#define HOROWITZ_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace horowitz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (words, rationals, configs).
class ParseError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its domain (rank mismatch, degenerate
// parameters, empty word where a curve is required, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Matrix is parabolic or elliptic where a hyperbolic one is required.
class NotHyperbolicError : public DomainError {
 public:
  explicit NotHyperbolicError(std::string const& what, bool parabolic)
      : DomainError(what), parabolic_(parabolic) {}
  bool parabolic() const noexcept {
    return parabolic_;
  }

 private:
  bool parabolic_;
};

// Two boundary points coincide where distinct points were required.
class SharedEndpointError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace horowitz

#endif  // HOROWITZ_ERROR_HPP_
