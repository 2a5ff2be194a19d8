#pragma once

#include <stdexcept>
#include <string>

namespace cenfrac {

/// Base of every error raised by the library. `code()` is a short stable
/// identifier used by the command line front-end (`ERROR[<code>]:`).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// A series that cannot converge for the supplied envelope.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what) : Error("divergence", what) {}
};

/// A precondition on an object's contract (interpolation, band, certificate) is violated.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what) : Error("contract", what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error("usage", what) {}
};

class NonConvergenceError : public Error {
 public:
  explicit NonConvergenceError(const std::string& what) : Error("nonconvergence", what) {}
};

}  // namespace cenfrac
