#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qw {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on letters, alphabets or parameters does not hold.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A requested horizon is too small for the analysis, or a finite
/// approximation has not saturated.
class HorizonError : public Error {
public:
  using Error::Error;
};

/// A word was expected to be covered by a quasiperiod and is not.
class CoverageError : public Error {
public:
  CoverageError(const std::string &what, std::size_t first_uncovered)
      : Error(what + " (first uncovered position " + std::to_string(first_uncovered) + ")"),
        first_uncovered_(first_uncovered) {}

  std::size_t first_uncovered() const noexcept { return first_uncovered_; }

private:
  std::size_t first_uncovered_;
};

/// A configured size budget would be exceeded, or a finite source ran dry.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// A serialized or encoded object is internally inconsistent.
class IntegrityError : public Error {
public:
  using Error::Error;
};

} // namespace qw
