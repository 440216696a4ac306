#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ouc {

/// Evaluation of a rational function at (or numerically at) one of its poles.
class PoleError : public std::domain_error {
 public:
  explicit PoleError(std::complex<double> s);
  std::complex<double> point() const { return s_; }

 private:
  std::complex<double> s_;
};

/// A linear system whose matrix is singular or has condition number > 1e12.
class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(const std::string& what, double condition);
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// Transfer matrix with numerator degree above denominator degree.
class ImproperError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// I - Dc*Dp singular when closing a feedback loop.
class AlgebraicLoopError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite state encountered while simulating.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double time);
  double time() const { return time_; }

 private:
  double time_;
};

/// Closed loop (or open-loop plant) is not asymptotically stable.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(const std::string& what, double margin);
  double margin() const { return margin_; }

 private:
  double margin_;
};

class RiccatiError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plant assembly failure (non-Hurwitz yaw loop, inconsistent model data).
class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Synthesis refused or failed at a named step.
class SynthesisError : public std::runtime_error {
 public:
  SynthesisError(std::string step, const std::string& what);
  const std::string& step() const { return step_; }

 private:
  std::string step_;
};

/// Invalid user configuration or input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ouc
