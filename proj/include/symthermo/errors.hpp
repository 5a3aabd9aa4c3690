#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symthermo {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coordinate left the domain of a potential or Hamiltonian (e.g. V <= 0).
class DomainError : public Error {
 public:
  DomainError(std::string coordinate, const std::string& what)
      : Error(what), coordinate_(std::move(coordinate)) {}
  const std::string& coordinate() const { return coordinate_; }

 private:
  std::string coordinate_;
};

/// Mismatched vector lengths between objects that must share an arity.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Two objects from different charts were mixed in one operation.
class ChartMismatchError : public Error {
 public:
  using Error::Error;
};

/// A computed quantity came out NaN or infinite.
class NonFiniteError : public Error {
 public:
  NonFiniteError(const std::string& what, int coordinate_index)
      : Error(what), coordinate_index_(coordinate_index) {}
  int coordinate_index() const { return coordinate_index_; }

 private:
  int coordinate_index_ = -1;
};

/// A Hessian block required to be invertible is (near-)singular.
class RegularityError : public Error {
 public:
  RegularityError(const std::string& what, double indicator,
                  std::ptrdiff_t sample_index = -1)
      : Error(what), indicator_(indicator), sample_index_(sample_index) {}
  double indicator() const { return indicator_; }
  /// Trajectory sample at which the singularity was hit, -1 for pointwise use.
  std::ptrdiff_t sample_index() const { return sample_index_; }

 private:
  double indicator_ = 0.0;
  std::ptrdiff_t sample_index_ = -1;
};

/// An iterative solver ran out of iterations.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations, double last_residual)
      : Error(what), iterations_(iterations), last_residual_(last_residual) {}
  int iterations() const { return iterations_; }
  double last_residual() const { return last_residual_; }

 private:
  int iterations_ = 0;
  double last_residual_ = 0.0;
};

/// An integration step failed; carries the index of the failing step and the
/// affine parameter of the last successfully completed sample.
class StepError : public Error {
 public:
  StepError(const std::string& what, int step_index, double last_good_t)
      : Error(what), step_index_(step_index), last_good_t_(last_good_t) {}
  int step_index() const { return step_index_; }
  double last_good_t() const { return last_good_t_; }

 private:
  int step_index_ = 0;
  double last_good_t_ = 0.0;
};

/// Scenario/CLI configuration problem; carries the offending field path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace symthermo
