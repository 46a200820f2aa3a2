#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pifin {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

struct ConductorOverflow : Error {
  using Error::Error;
};

struct SingularMatrix : Error {
  std::size_t rank;
  SingularMatrix(std::size_t r, std::size_t n)
      : Error("singular matrix: rank " + std::to_string(r) + " < " + std::to_string(n)), rank(r) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

// Enumeration or closure would exceed a configured bound.
struct BoundExceeded : Error {
  std::string bound;
  unsigned long long limit;
  BoundExceeded(std::string name, unsigned long long lim, const std::string& what)
      : Error(what + " (bound " + name + " = " + std::to_string(lim) + ")"), bound(std::move(name)), limit(lim) {}
};

}  // namespace pifin
