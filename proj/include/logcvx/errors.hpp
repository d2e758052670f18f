#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace logcvx {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument or finite-difference stencil left the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An evaluation produced NaN or infinity.
class NonFiniteError : public Error {
 public:
  NonFiniteError(const std::string& what, double x);
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// Two arguments of a difference quotient coincide.
class DegenerateArguments : public Error {
 public:
  using Error::Error;
};

/// f(x) vanished where a nonzero value is required.
class ZeroValueError : public Error {
 public:
  using Error::Error;
};

/// f(x) <= 0 where a logarithm has to be formed.
class NonPositiveError : public Error {
 public:
  using Error::Error;
};

/// A representer vanished inside a product or quotient chain.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, std::optional<long> k = std::nullopt);
  std::optional<long> index() const noexcept { return k_; }

 private:
  std::optional<long> k_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected);
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnboundParameter : public Error {
 public:
  explicit UnboundParameter(std::vector<std::string> names);
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
};

/// f^(k)(x) vanished while building an Artinian derivative chain.
class ZeroDerivative : public Error {
 public:
  using Error::Error;
};

/// g(x+n)/g(n) does not approach 1, so the product representation has no limit.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

class SeriesDivergence : public Error {
 public:
  using Error::Error;
};

class ToleranceNotMet : public Error {
 public:
  using Error::Error;
};

}  // namespace logcvx
