#pragma once

#include <variant>
#include <vector>

#include "relaxlab/numerics.hpp"

namespace relaxlab {

/// Piecewise-linear integrand sampled on a strictly increasing grid.
///
/// Between grid points the value is the linear interpolant when both
/// neighbours are finite and +inf otherwise. Outside [zs.front(), zs.back()]
/// the value is +inf.
class TabulatedIntegrand {
 public:
  TabulatedIntegrand(std::vector<double> zs, std::vector<ExtendedReal> vals);

  const std::vector<double>& zs() const { return zs_; }
  const std::vector<ExtendedReal>& vals() const { return vals_; }
  std::size_t size() const { return zs_.size(); }

  ExtendedReal operator()(double z) const;

  bool all_finite() const;

 private:
  std::vector<double> zs_;
  std::vector<ExtendedReal> vals_;
};

/// f(z) = 0 on {-1, 1}, 1 at 0, +inf elsewhere.
struct TripleWell {};
/// f**(z) = 0 on [-1, 1], +inf elsewhere.
struct ConvexEnvelopeTripleWell {};
/// f_n(z) = min{ n(z-1)^2, n(z+1)^2, 1 + n z^2 }; increases to TripleWell as n grows.
struct FiniteApprox {
  int n = 1;
};

using Integrand =
    std::variant<TripleWell, ConvexEnvelopeTripleWell, FiniteApprox, TabulatedIntegrand>;

ExtendedReal eval_triple_well(double z, const TolerancePolicy& tol = kDefaultTolerance);
ExtendedReal eval_convex_envelope(double z, const TolerancePolicy& tol = kDefaultTolerance);
ExtendedReal eval_finite_approx(int n, double z);

ExtendedReal eval(const Integrand& f, double z, const TolerancePolicy& tol = kDefaultTolerance);

/// True when the integrand is finite at every real argument inside its table
/// range (FiniteApprox, or a Tabulated integrand without +inf entries).
bool is_finite_valued(const Integrand& f);

struct HullVertex {
  double z;
  double value;
};

/// Lower convex hull of the finite points (zs[i], vals[i]), left to right.
/// Throws std::invalid_argument when no value is finite.
std::vector<HullVertex> lower_hull(const TabulatedIntegrand& t);

/// Lower convex envelope of a tabulation, sampled back on the same grid:
/// linear between hull vertices, +inf outside the hull's z-range.
TabulatedIntegrand convexify(const TabulatedIntegrand& t);

/// Samples an integrand on a grid.
TabulatedIntegrand tabulate(const Integrand& f, const std::vector<double>& zs,
                            const TolerancePolicy& tol = kDefaultTolerance);

}  // namespace relaxlab
