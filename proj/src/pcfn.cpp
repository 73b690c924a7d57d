#include "relaxlab/pcfn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace relaxlab {

PiecewiseConstantFn::PiecewiseConstantFn(Eigen::VectorXd breakpoints, Eigen::VectorXd values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  const Eigen::Index nb = breakpoints_.size();
  if (nb < 2) throw ValidationError("/breakpoints", "need at least two breakpoints");
  if (values_.size() != nb - 1)
    throw ValidationError("/values", "expected " + std::to_string(nb - 1) + " values, got " +
                                         std::to_string(values_.size()));
  for (Eigen::Index i = 0; i < nb; ++i) {
    if (!std::isfinite(breakpoints_[i]))
      throw ValidationError("/breakpoints/" + std::to_string(i), "not a finite number");
  }
  if (breakpoints_[0] != 0.0) throw ValidationError("/breakpoints/0", "first breakpoint must be 0");
  if (breakpoints_[nb - 1] != 1.0)
    throw ValidationError("/breakpoints/" + std::to_string(nb - 1), "last breakpoint must be 1");
  for (Eigen::Index i = 1; i < nb; ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1]))
      throw ValidationError("/breakpoints/" + std::to_string(i), "breakpoints must be strictly increasing");
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw ValidationError("/values/" + std::to_string(i), "not a finite number");
  }
}

PiecewiseConstantFn PiecewiseConstantFn::constant(double c) {
  return {Eigen::Vector2d(0.0, 1.0), Eigen::VectorXd::Constant(1, c)};
}

PiecewiseConstantFn PiecewiseConstantFn::step(double t, double upper, double lower) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("step: t must lie in (0,1)");
  return {Eigen::Vector3d(0.0, t, 1.0), Eigen::Vector2d(upper, lower)};
}

Eigen::VectorXd PiecewiseConstantFn::lengths() const {
  const Eigen::Index k = intervals();
  return breakpoints_.tail(k) - breakpoints_.head(k);
}

double PiecewiseConstantFn::operator()(double x) const {
  const auto* begin = breakpoints_.data();
  const auto* end = begin + breakpoints_.size();
  auto idx = std::upper_bound(begin, end, x) - begin - 1;
  idx = std::clamp<std::ptrdiff_t>(idx, 0, values_.size() - 1);
  return values_[idx];
}

ValueHistogram histogram(const PiecewiseConstantFn& u, const TolerancePolicy& tol) {
  const Eigen::VectorXd len = u.lengths();
  const auto& vals = u.values();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(vals.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return vals[a] < vals[b]; });

  std::vector<double> out_v;
  std::vector<double> out_m;
  for (auto i : order) {
    if (!out_v.empty() && vals[i] - out_v.back() <= tol.eps_eq) {
      out_m.back() += len[i];
    } else {
      out_v.push_back(vals[i]);
      out_m.push_back(len[i]);
    }
  }
  ValueHistogram h;
  h.values = Eigen::Map<const Eigen::VectorXd>(out_v.data(), static_cast<Eigen::Index>(out_v.size()));
  h.measures = Eigen::Map<const Eigen::VectorXd>(out_m.data(), static_cast<Eigen::Index>(out_m.size()));
  return h;
}

Stats stats(const PiecewiseConstantFn& u) {
  Stats s{};
  s.ess_inf = u.values().minCoeff();
  s.ess_sup = u.values().maxCoeff();
  // Rounding may push the weighted sum marginally outside [inf, sup].
  s.mean = std::clamp(u.values().dot(u.lengths()), s.ess_inf, s.ess_sup);
  return s;
}

PiecewiseConstantFn shift(const PiecewiseConstantFn& u, double c) {
  return {u.breakpoints(), (u.values().array() + c).matrix()};
}

PiecewiseConstantFn negate(const PiecewiseConstantFn& u) { return {u.breakpoints(), -u.values()}; }

double moment(const PiecewiseConstantFn& u, int k) {
  if (k < 0) throw std::invalid_argument("moment: negative order");
  const auto& b = u.breakpoints();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < u.intervals(); ++i) {
    const double hi = std::pow(b[i + 1], k + 1);
    const double lo = std::pow(b[i], k + 1);
    acc += u.values()[i] * (hi - lo);
  }
  return acc / (k + 1);
}

double average(const PiecewiseConstantFn& u, double a, double b) {
  if (!(b > a)) throw std::invalid_argument("average: empty window");
  const auto& bp = u.breakpoints();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < u.intervals(); ++i) {
    const double lo = std::max(a, bp[i]);
    const double hi = std::min(b, bp[i + 1]);
    if (hi > lo) acc += u.values()[i] * (hi - lo);
  }
  return acc / (b - a);
}

PiecewiseConstantFn coalesce(const PiecewiseConstantFn& u) {
  std::vector<double> bp{0.0};
  std::vector<double> vals;
  for (Eigen::Index i = 0; i < u.intervals(); ++i) {
    if (!vals.empty() && vals.back() == u.values()[i]) {
      bp.back() = u.breakpoints()[i + 1];
    } else {
      vals.push_back(u.values()[i]);
      bp.push_back(u.breakpoints()[i + 1]);
    }
  }
  return {Eigen::Map<const Eigen::VectorXd>(bp.data(), static_cast<Eigen::Index>(bp.size())),
          Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()))};
}

}  // namespace relaxlab
