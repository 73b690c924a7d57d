#pragma once

#include <string_view>

#include "relaxlab/integrand.hpp"
#include "relaxlab/numerics.hpp"
#include "relaxlab/pcfn.hpp"

namespace relaxlab {

enum class RelaxCase { Unconstrained, SingleZ, Interior, Infeasible };

std::string_view to_string(RelaxCase c);

/// Minimiser and value of the relaxed energy for one input function.
///
/// For infeasible inputs value is +inf and w_star, z_star, t are NaN.
struct RelaxationResult {
  bool feasible = false;
  double w_star = 0.0;  // centred: optimal lower well is z_star = w_star + mean - 1/2
  double z_star = 0.0;
  double t = 0.0;       // measure of the upper well, mean - z_star
  ExtendedReal value = ExtendedReal::infinity();
  RelaxCase relax_case = RelaxCase::Infeasible;
};

/// Double integral of f(u(x) - u(y)) over the unit square, summed over the
/// value histogram of u.
ExtendedReal evaluate_F(const PiecewiseConstantFn& u, const Integrand& f,
                        const TolerancePolicy& tol = kDefaultTolerance);
ExtendedReal evaluate_F(const ValueHistogram& h, const Integrand& f,
                        const TolerancePolicy& tol = kDefaultTolerance);

/// Convex lower bound: 0 when the range of u is at most 1, +inf otherwise.
ExtendedReal evaluate_F0(const PiecewiseConstantFn& u, const TolerancePolicy& tol = kDefaultTolerance);

/// At most two distinct values, and two values only at distance 1.
bool two_value_feasible(const PiecewiseConstantFn& u, const TolerancePolicy& tol = kDefaultTolerance);

RelaxationResult relax_closed_form(const PiecewiseConstantFn& u,
                                   const TolerancePolicy& tol = kDefaultTolerance);
RelaxationResult relax_via_z(const PiecewiseConstantFn& u, const TolerancePolicy& tol = kDefaultTolerance);
RelaxationResult relax_via_w(const PiecewiseConstantFn& u, const TolerancePolicy& tol = kDefaultTolerance);

/// (mean - inf)^2 + (mean - sup)^2. Throws std::domain_error unless the
/// range of u is 1 within eps_check.
ExtendedReal single_z_value(const PiecewiseConstantFn& u, const TolerancePolicy& tol = kDefaultTolerance);

}  // namespace relaxlab
