#include "relaxlab/nonrep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "relaxlab/functional.hpp"

namespace relaxlab {

namespace {

constexpr double kEdgeGuard = 1e-6;

void require_open_unit(double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("implied_g1: degenerate step, t must lie in (0,1)");
}

}  // namespace

double implied_g0() { return 0.5; }

double implied_g1(double t) {
  require_open_unit(t);
  return (2 * t * t - 2 * t + 1) / (4 * t * (1 - t));
}

double implied_g1_from_relaxation(double t, const TolerancePolicy& tol) {
  require_open_unit(t);
  const double relaxed = relax_closed_form(PiecewiseConstantFn::step(t), tol).value.value();
  const double diagonal = 2 * t * t - 2 * t + 1;
  return (relaxed - diagonal * implied_g0()) / (2 * t * (1 - t));
}

KernelFitReport nonrep_certificate(const std::vector<double>& t_list, const TolerancePolicy& tol) {
  std::vector<double> classes;
  for (double t : t_list) {
    if (!(t > kEdgeGuard && t < 1.0 - kEdgeGuard))
      throw std::invalid_argument("nonrep_certificate: probe t must lie in (1e-6, 1 - 1e-6)");
    classes.push_back(std::min(t, 1.0 - t));
  }
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end(),
                            [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
                classes.end());
  if (classes.size() < 2)
    throw std::invalid_argument("nonrep_certificate: need two probes distinct up to t <-> 1 - t");

  KernelFitReport rep;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double t : t_list) {
    const double g1 = implied_g1(t);
    rep.implied_g1.emplace_back(t, g1);
    lo = std::min(lo, g1);
    hi = std::max(hi, g1);
  }
  rep.spread = hi - lo;

  // Probe rows: the constant function (weights 1, 0) and each step (weights
  // 2t^2 - 2t + 1, 2t(1-t)); right-hand sides are the relaxed energies.
  const auto rows = static_cast<Eigen::Index>(t_list.size()) + 1;
  Eigen::MatrixX2d A(rows, 2);
  Eigen::VectorXd b(rows);
  A.row(0) << 1.0, 0.0;
  b[0] = relax_closed_form(PiecewiseConstantFn::constant(0.0), tol).value.value();
  for (Eigen::Index i = 1; i < rows; ++i) {
    const double t = t_list[static_cast<std::size_t>(i - 1)];
    A.row(i) << 2 * t * t - 2 * t + 1, 2 * t * (1 - t);
    b[i] = relax_closed_form(PiecewiseConstantFn::step(t), tol).value.value();
  }
  const Eigen::Matrix2d normal = A.transpose() * A;
  const Eigen::Vector2d g = normal.ldlt().solve(A.transpose() * b);
  rep.g0 = g[0];
  rep.g1 = g[1];
  rep.residual = std::sqrt((A * g - b).squaredNorm() / static_cast<double>(rows));
  return rep;
}

double representation_residual(const PiecewiseConstantFn& u, double g0, double g1, const TolerancePolicy& tol) {
  const auto h = histogram(u, tol);
  double weight0 = 0.0;
  double weight1 = 0.0;
  if (h.size() == 1) {
    weight0 = 1.0;
  } else if (h.size() == 2 && std::abs(h.values[1] - h.values[0] - 1.0) <= tol.eps_well) {
    weight0 = h.measures.squaredNorm();
    weight1 = 2.0 * h.measures[0] * h.measures[1];
  } else {
    throw std::invalid_argument("representation_residual: u has value differences other than 0 and +-1");
  }
  const double relaxed = relax_closed_form(u, tol).value.value();
  return std::abs(weight0 * g0 + weight1 * g1 - relaxed);
}

}  // namespace relaxlab
