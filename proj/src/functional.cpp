#include "relaxlab/functional.hpp"

#include <cmath>
#include <limits>

#include "relaxlab/closed_form.hpp"

namespace relaxlab {

std::string_view to_string(RelaxCase c) {
  switch (c) {
    case RelaxCase::Unconstrained:
      return "Unconstrained";
    case RelaxCase::SingleZ:
      return "SingleZ";
    case RelaxCase::Interior:
      return "Interior";
    case RelaxCase::Infeasible:
      return "Infeasible";
  }
  return "Infeasible";
}

ExtendedReal evaluate_F(const ValueHistogram& h, const Integrand& f, const TolerancePolicy& tol) {
  ExtendedReal acc = 0.0;
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    for (Eigen::Index j = 0; j < h.size(); ++j) {
      const double w = h.measures[i] * h.measures[j];
      acc = ext_add(acc, weighted_term(w, eval(f, h.values[i] - h.values[j], tol)));
    }
  }
  return acc;
}

ExtendedReal evaluate_F(const PiecewiseConstantFn& u, const Integrand& f, const TolerancePolicy& tol) {
  return evaluate_F(histogram(u, tol), f, tol);
}

ExtendedReal evaluate_F0(const PiecewiseConstantFn& u, const TolerancePolicy& tol) {
  const auto s = stats(u);
  if (s.range() <= 1.0 + tol.eps_check) return 0.0;
  return ExtendedReal::infinity();
}

bool two_value_feasible(const PiecewiseConstantFn& u, const TolerancePolicy& tol) {
  const auto h = histogram(u, tol);
  if (h.size() == 1) return true;
  if (h.size() == 2) return std::abs(h.values[1] - h.values[0] - 1.0) <= tol.eps_well;
  return false;
}

namespace {

RelaxCase classify(const Stats& s, const TolerancePolicy& tol) {
  const double r = s.range();
  if (r > 1.0 + tol.eps_check) return RelaxCase::Infeasible;
  if (r <= 0.5 + tol.eps_check) return RelaxCase::Unconstrained;
  if (std::abs(r - 1.0) <= tol.eps_check) return RelaxCase::SingleZ;
  return RelaxCase::Interior;
}

RelaxationResult infeasible() {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  return {false, nan, nan, nan, ExtendedReal::infinity(), RelaxCase::Infeasible};
}

// Completes a result from the optimal lower well z.
RelaxationResult from_z(const Stats& s, double z, double value, RelaxCase c) {
  RelaxationResult r;
  r.feasible = true;
  r.z_star = z;
  r.w_star = z + 0.5 - s.mean;
  r.t = s.mean - z;
  r.value = value;
  r.relax_case = c;
  return r;
}

}  // namespace

RelaxationResult relax_closed_form(const PiecewiseConstantFn& u, const TolerancePolicy& tol) {
  namespace cf = closed_form;
  const auto s = stats(u);
  const auto c = classify(s, tol);
  switch (c) {
    case RelaxCase::Infeasible:
      return infeasible();
    case RelaxCase::Unconstrained: {
      RelaxationResult r = from_z(s, s.mean - 0.5, 0.5, c);
      r.w_star = 0.0;
      r.t = 0.5;
      return r;
    }
    case RelaxCase::SingleZ: {
      // The constraint interval collapses to z = ess-inf.
      const double w = s.ess_inf + 0.5 - s.mean;
      RelaxationResult r = from_z(s, s.ess_inf, cf::energy_centered(w), c);
      r.w_star = w;
      return r;
    }
    case RelaxCase::Interior: {
      const double w = cf::centered_minimizer(s.ess_inf, s.ess_sup, s.mean);
      RelaxationResult r = from_z(s, w + s.mean - 0.5, cf::energy_centered(w), c);
      r.w_star = w;
      return r;
    }
  }
  return infeasible();
}

RelaxationResult relax_via_z(const PiecewiseConstantFn& u, const TolerancePolicy& tol) {
  namespace cf = closed_form;
  const auto s = stats(u);
  const auto c = classify(s, tol);
  if (c == RelaxCase::Infeasible) return infeasible();
  const double lo = s.ess_sup - 1.0;
  const double hi = s.ess_inf;
  const double z = (c == RelaxCase::SingleZ) ? hi : clamp(s.mean - 0.5, std::min(lo, hi), hi);
  return from_z(s, z, cf::energy_in_z(s.mean, z), c);
}

RelaxationResult relax_via_w(const PiecewiseConstantFn& u, const TolerancePolicy& tol) {
  namespace cf = closed_form;
  const auto s = stats(u);
  const auto c = classify(s, tol);
  if (c == RelaxCase::Infeasible) return infeasible();
  // Uncentred w = z + 1/2 ranges over [sup - 1/2, inf + 1/2]; free minimiser is the mean.
  const double lo = s.ess_sup - 0.5;
  const double hi = s.ess_inf + 0.5;
  const double w = (c == RelaxCase::SingleZ) ? hi : clamp(s.mean, std::min(lo, hi), hi);
  return from_z(s, w - 0.5, cf::energy_in_w(s.mean, w), c);
}

ExtendedReal single_z_value(const PiecewiseConstantFn& u, const TolerancePolicy& tol) {
  const auto s = stats(u);
  if (std::abs(s.range() - 1.0) > tol.eps_check)
    throw std::domain_error("single_z_value: range of u is not 1");
  const double a = s.mean - s.ess_inf;
  const double b = s.mean - s.ess_sup;
  return a * a + b * b;
}

}  // namespace relaxlab
