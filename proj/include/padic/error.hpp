#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace padic {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A power of p does not fit into a double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A coset grid would exceed the configured cardinality cap.
class GridCapError : public Error {
 public:
  GridCapError(const std::string& what, std::uint64_t cardinality)
      : Error(what), cardinality_(cardinality) {}
  std::uint64_t cardinality() const noexcept { return cardinality_; }

 private:
  std::uint64_t cardinality_;
};

// Input is outside the Lizorkin space the operation requires.
class NotLizorkinError : public Error {
 public:
  using Error::Error;
};

class NonRadialError : public Error {
 public:
  using Error::Error;
};

// beta / alpha is not a positive integer: nonzero data admit no solution.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace padic
