#pragma once

#include <stdexcept>
#include <string>

namespace fjsq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix dimensions are invalid or do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Non-finite input or output encountered.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A value violates a documented contract (e.g. an invalid density matrix).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A summation cutoff is too small for the requested tolerance.
class CutoffError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or protocol document.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Population reached the guard band at the top of the truncated Fock space.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int advisory_dim)
      : Error(what + " (advisory minimum dimension: " + std::to_string(advisory_dim) + ")"),
        advisory_dim_(advisory_dim) {}

  int advisory_dim() const noexcept { return advisory_dim_; }

  /// Same error with `context` prepended to the message.
  TruncationError with_context(const std::string& context) const {
    return TruncationError(Verbatim{}, context + ": " + what(), advisory_dim_);
  }

 private:
  struct Verbatim {};
  TruncationError(Verbatim, const std::string& what, int advisory_dim) : Error(what), advisory_dim_(advisory_dim) {}

  int advisory_dim_;
};

}  // namespace fjsq
