#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "detlab/numerics/types.hpp"

namespace detlab {

enum class ErrorKind {
  parameter,
  domain,
  non_finite,
  singularity,
  stiffness,
  pole,
  convergence,
  truncation,
  mode_range,
  spectrum_proximity,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(ErrorKind::parameter, what) {}
};

// z on (or numerically on) the essential spectrum [0, inf).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class NonFiniteError : public Error {
 public:
  explicit NonFiniteError(const std::string& what) : Error(ErrorKind::non_finite, what) {}
};

class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double pivot, double threshold)
      : Error(ErrorKind::singularity, what), pivot_(pivot), threshold_(threshold) {}
  double pivot() const noexcept { return pivot_; }
  double threshold() const noexcept { return threshold_; }

 private:
  double pivot_;
  double threshold_;
};

class StiffnessError : public Error {
 public:
  StiffnessError(const std::string& what, double x) : Error(ErrorKind::stiffness, what), x_(x) {}
  double position() const noexcept { return x_; }

 private:
  double x_;
};

// A boundary quantity vanished: z sits at (or very near) an eigenvalue of the
// complementary boundary condition.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double magnitude)
      : Error(ErrorKind::pole, what), magnitude_(magnitude) {}
  double magnitude() const noexcept { return magnitude_; }

 private:
  double magnitude_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<cplx> sequence)
      : Error(ErrorKind::convergence, what), sequence_(std::move(sequence)) {}
  const std::vector<cplx>& sequence() const noexcept { return sequence_; }

 private:
  std::vector<cplx> sequence_;
};

class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double suggested_x_max)
      : Error(ErrorKind::truncation, what), suggested_(suggested_x_max) {}
  double suggested_x_max() const noexcept { return suggested_; }

 private:
  double suggested_;
};

class ModeRangeError : public Error {
 public:
  ModeRangeError(const std::string& what, int ell) : Error(ErrorKind::mode_range, what), ell_(ell) {}
  int ell() const noexcept { return ell_; }

 private:
  int ell_;
};

class SpectrumProximityError : public Error {
 public:
  SpectrumProximityError(const std::string& what, int ell)
      : Error(ErrorKind::spectrum_proximity, what), ell_(ell) {}
  int ell() const noexcept { return ell_; }

 private:
  int ell_;
};

}  // namespace detlab
