#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace corplex {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or undecodable input. `location` is a 1-based line number for
/// line-oriented formats and a 0-based byte offset for raw text.
class IngestionError : public Error {
 public:
  enum class Unit { line, byte };

  IngestionError(const std::string& what, Unit unit, std::size_t location)
      : Error(what), unit_(unit), location_(location) {}

  Unit unit() const noexcept { return unit_; }
  std::size_t location() const noexcept { return location_; }

 private:
  Unit unit_;
  std::size_t location_;
};

/// A measure that is not defined for the given input (empty stream, no full
/// segment, N < 2, ...).
class UndefinedMeasure : public Error {
 public:
  using Error::Error;
};

/// A sample with no spread where one is required (e.g. KDE of identical values).
class DegenerateDistribution : public UndefinedMeasure {
 public:
  using UndefinedMeasure::UndefinedMeasure;
};

/// A caller-supplied argument outside the operation's domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure in a special function or quadrature.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// LNRE optimizer failure. Carries the best parameters seen (natural scale)
/// and the simplex diameter at termination.
class FitError : public Error {
 public:
  FitError(const std::string& what, std::vector<double> best_params, double simplex_diameter)
      : Error(what), best_params_(std::move(best_params)), simplex_diameter_(simplex_diameter) {}

  const std::vector<double>& best_params() const noexcept { return best_params_; }
  double simplex_diameter() const noexcept { return simplex_diameter_; }

 private:
  std::vector<double> best_params_;
  double simplex_diameter_;
};

/// A plot was requested whose series is missing from the report.
class RenderError : public Error {
 public:
  using Error::Error;
};

}  // namespace corplex
