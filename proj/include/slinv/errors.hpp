#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace slinv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (maps to CLI exit status 2).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical stage failed (maps to CLI exit status 3). Carries the stage tag.
class NumericalError : public Error {
 public:
  NumericalError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

class InsufficientTruncationError : public InputError {
 public:
  using InputError::InputError;
};

/// Zero count inside a search region differs from the expected count.
class MultiplicityError : public NumericalError {
 public:
  MultiplicityError(const std::string& region, const std::string& what)
      : NumericalError("eigenvalue search", what + " [" + region + "]"), region_(region) {}

  const std::string& region() const noexcept { return region_; }

 private:
  std::string region_;
};

class RefinementError : public NumericalError {
 public:
  explicit RefinementError(const std::string& what) : NumericalError("newton refinement", what) {}
};

class PoleProximityError : public NumericalError {
 public:
  explicit PoleProximityError(const std::string& what) : NumericalError("pole proximity", what) {}
};

class NearMultipleEigenvalueError : public NumericalError {
 public:
  explicit NearMultipleEigenvalueError(const std::string& what) : NumericalError("weight numbers", what) {}
};

/// E + H(x) is singular or numerically singular at the recorded position.
class NonInvertibleError : public NumericalError {
 public:
  NonInvertibleError(double x, int n, double condition, const std::string& extra = {})
      : NumericalError("main equation",
                       "E+H(x) not invertible at x=" + std::to_string(x) + ", N=" + std::to_string(n) +
                           ", condition estimate " + std::to_string(condition) + extra),
        x_(x),
        n_(n),
        condition_(condition) {}

  double x() const noexcept { return x_; }
  int truncation() const noexcept { return n_; }
  double condition() const noexcept { return condition_; }

 private:
  double x_;
  int n_;
  double condition_;
};

class ReconstructionQualityError : public NumericalError {
 public:
  explicit ReconstructionQualityError(const std::string& what) : NumericalError("reconstruction", what) {}
};

}  // namespace slinv
