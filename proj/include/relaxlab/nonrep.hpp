#pragma once

#include <utility>
#include <vector>

#include "relaxlab/numerics.hpp"
#include "relaxlab/pcfn.hpp"

namespace relaxlab {

/// Outcome of fitting an even kernel g (through g(0) and g(+-1)) to the
/// relaxed energy on constants and unit steps.
struct KernelFitReport {
  double g0 = 0.0;        // least-squares g(0)
  double g1 = 0.0;        // least-squares g(+-1)
  double residual = 0.0;  // root-mean-square misfit over all probes
  std::vector<std::pair<double, double>> implied_g1;  // (t, g(1) forced by the step at t)
  double spread = 0.0;    // max - min of implied g(1)

  /// No kernel reproduces the relaxed energy on the probe family.
  bool certifies(double tolerance = 1e-9) const { return spread > tolerance && residual > tolerance; }
};

/// g(0) forced by constant functions.
double implied_g0();

/// g(1) forced by the unit step of height 1 on [0, t), given g(0):
/// (2t^2 - 2t + 1) / (4 t (1 - t)). Throws std::domain_error for t outside (0,1).
double implied_g1(double t);

/// Same quantity recovered from relax_closed_form on the step, as
/// (relaxed - (2t^2 - 2t + 1) g0) / (2 t (1 - t)).
double implied_g1_from_relaxation(double t, const TolerancePolicy& tol = kDefaultTolerance);

/// Throws std::invalid_argument unless t_list holds at least two probes that
/// stay distinct after identifying t with 1 - t, all at least 1e-6 away from 0 and 1.
KernelFitReport nonrep_certificate(const std::vector<double>& t_list,
                                   const TolerancePolicy& tol = kDefaultTolerance);

/// |weight0 g0 + weight1 g1 - relaxed(u)| for u constant or two-valued at
/// distance 1. Throws std::invalid_argument for any other u.
double representation_residual(const PiecewiseConstantFn& u, double g0, double g1,
                               const TolerancePolicy& tol = kDefaultTolerance);

}  // namespace relaxlab
