#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpn {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A rational function was built with the zero polynomial as denominator,
/// or something was divided by zero.
class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

/// A floating coefficient was NaN or infinite.
class NonFiniteCoefficient : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

/// Raised by raise()/lower() when dP·P·d̄P (resp. d̄P·P·dP) vanishes, i.e. the
/// projector is the last member of its tower in that direction.
class TowerTerminated : public Error {
 public:
  explicit TowerTerminated(std::size_t index)
      : Error("tower terminated at index " + std::to_string(index)), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// build_tower() ran out of members before reaching N.
class PrematureTermination : public Error {
 public:
  PrematureTermination(std::size_t index, std::size_t expected)
      : Error("tower terminated prematurely at index " + std::to_string(index) + " (expected " +
              std::to_string(expected) + " members)"),
        index_(index),
        expected_(expected) {}
  std::size_t index() const noexcept { return index_; }
  std::size_t expected() const noexcept { return expected_; }

 private:
  std::size_t index_;
  std::size_t expected_;
};

class CertificationFailure : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class ForbiddenSpectralValue : public Error {
 public:
  using Error::Error;
};

class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

/// Evaluation point lies (numerically) on a pole of the evaluated object.
class NearPole : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace cpn
