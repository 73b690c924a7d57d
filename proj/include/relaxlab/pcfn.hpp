#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "relaxlab/numerics.hpp"

namespace relaxlab {

/// Input validation failure that names the offending field, e.g. "/values/2".
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string path, const std::string& what)
      : std::invalid_argument(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A function on (0,1) that is constant on each [b_{i-1}, b_i).
///
/// Breakpoints satisfy 0 = b_0 < b_1 < ... < b_k = 1 and there is one value
/// per interval. Every interval has positive length, so essential extrema are
/// plain extrema over the stored values.
class PiecewiseConstantFn {
 public:
  PiecewiseConstantFn(Eigen::VectorXd breakpoints, Eigen::VectorXd values);

  static PiecewiseConstantFn constant(double c);
  /// u = upper on [0, t), lower on [t, 1).
  static PiecewiseConstantFn step(double t, double upper = 1.0, double lower = 0.0);

  const Eigen::VectorXd& breakpoints() const { return breakpoints_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index intervals() const { return values_.size(); }
  Eigen::VectorXd lengths() const;

  /// Value at x in [0,1); x = 1 returns the last value.
  double operator()(double x) const;

 private:
  Eigen::VectorXd breakpoints_;
  Eigen::VectorXd values_;
};

/// Distinct values (ascending) and the Lebesgue measure on which each is taken.
struct ValueHistogram {
  Eigen::VectorXd values;
  Eigen::VectorXd measures;

  Eigen::Index size() const { return values.size(); }
};

struct Stats {
  double ess_inf;
  double ess_sup;
  double mean;

  double range() const { return ess_sup - ess_inf; }
};

/// Groups values within eps_eq of the group's smallest member.
ValueHistogram histogram(const PiecewiseConstantFn& u,
                         const TolerancePolicy& tol = kDefaultTolerance);

Stats stats(const PiecewiseConstantFn& u);

PiecewiseConstantFn shift(const PiecewiseConstantFn& u, double c);
PiecewiseConstantFn negate(const PiecewiseConstantFn& u);

/// Integral of u(x) x^k over (0,1), exact for piecewise-constant u.
double moment(const PiecewiseConstantFn& u, int k);

/// Average of u over [a, b).
double average(const PiecewiseConstantFn& u, double a, double b);

/// Joins neighbouring intervals whose values are bit-identical.
PiecewiseConstantFn coalesce(const PiecewiseConstantFn& u);

}  // namespace relaxlab
