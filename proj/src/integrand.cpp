#include "relaxlab/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace relaxlab {

TabulatedIntegrand::TabulatedIntegrand(std::vector<double> zs, std::vector<ExtendedReal> vals)
    : zs_(std::move(zs)), vals_(std::move(vals)) {
  if (zs_.size() != vals_.size())
    throw std::invalid_argument("TabulatedIntegrand: zs and vals differ in length");
  if (zs_.empty()) throw std::invalid_argument("TabulatedIntegrand: empty grid");
  for (std::size_t i = 0; i < zs_.size(); ++i) {
    if (!std::isfinite(zs_[i]))
      throw std::invalid_argument("TabulatedIntegrand: non-finite grid point at index " +
                                  std::to_string(i));
    if (i > 0 && !(zs_[i] > zs_[i - 1]))
      throw std::invalid_argument("TabulatedIntegrand: grid not strictly increasing at index " +
                                  std::to_string(i));
  }
}

ExtendedReal TabulatedIntegrand::operator()(double z) const {
  if (std::isnan(z) || z < zs_.front() || z > zs_.back()) return ExtendedReal::infinity();
  auto it = std::lower_bound(zs_.begin(), zs_.end(), z);
  auto hi = static_cast<std::size_t>(it - zs_.begin());
  if (zs_[hi] == z) return vals_[hi];
  auto lo = hi - 1;
  if (vals_[lo].is_infinite() || vals_[hi].is_infinite()) return ExtendedReal::infinity();
  double s = (z - zs_[lo]) / (zs_[hi] - zs_[lo]);
  return ExtendedReal(vals_[lo].value() + s * (vals_[hi].value() - vals_[lo].value()));
}

bool TabulatedIntegrand::all_finite() const {
  return std::all_of(vals_.begin(), vals_.end(), [](const ExtendedReal& v) { return v.is_finite(); });
}

ExtendedReal eval_triple_well(double z, const TolerancePolicy& tol) {
  if (std::abs(z - 1.0) <= tol.eps_well || std::abs(z + 1.0) <= tol.eps_well) return 0.0;
  if (std::abs(z) <= tol.eps_well) return 1.0;
  return ExtendedReal::infinity();
}

ExtendedReal eval_convex_envelope(double z, const TolerancePolicy& tol) {
  if (std::abs(z) <= 1.0 + tol.eps_well) return 0.0;
  return ExtendedReal::infinity();
}

ExtendedReal eval_finite_approx(int n, double z) {
  if (n < 1) throw std::invalid_argument("FiniteApprox: n must be >= 1");
  const double k = static_cast<double>(n);
  const double left = k * (z + 1.0) * (z + 1.0);
  const double right = k * (z - 1.0) * (z - 1.0);
  const double middle = 1.0 + k * z * z;
  return std::min({left, right, middle});
}

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

ExtendedReal eval(const Integrand& f, double z, const TolerancePolicy& tol) {
  return std::visit(
      overloaded{
          [&](const TripleWell&) { return eval_triple_well(z, tol); },
          [&](const ConvexEnvelopeTripleWell&) { return eval_convex_envelope(z, tol); },
          [&](const FiniteApprox& a) { return eval_finite_approx(a.n, z); },
          [&](const TabulatedIntegrand& t) { return t(z); },
      },
      f);
}

bool is_finite_valued(const Integrand& f) {
  return std::visit(overloaded{
                        [](const TripleWell&) { return false; },
                        [](const ConvexEnvelopeTripleWell&) { return false; },
                        [](const FiniteApprox&) { return true; },
                        [](const TabulatedIntegrand& t) { return t.all_finite(); },
                    },
                    f);
}

std::vector<HullVertex> lower_hull(const TabulatedIntegrand& t) {
  // Andrew's monotone chain, lower half only; points arrive sorted by z.
  std::vector<HullVertex> hull;
  const auto cross = [](const HullVertex& o, const HullVertex& a, const HullVertex& b) {
    return (a.z - o.z) * (b.value - o.value) - (a.value - o.value) * (b.z - o.z);
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.vals()[i].is_infinite()) continue;
    HullVertex p{t.zs()[i], t.vals()[i].value()};
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  if (hull.empty()) throw std::invalid_argument("convexify: empty effective domain (all values infinite)");
  return hull;
}

TabulatedIntegrand convexify(const TabulatedIntegrand& t) {
  const auto hull = lower_hull(t);
  std::vector<ExtendedReal> out(t.size(), ExtendedReal::infinity());
  std::size_t seg = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double z = t.zs()[i];
    if (z < hull.front().z || z > hull.back().z) continue;
    while (seg + 1 < hull.size() && z > hull[seg + 1].z) ++seg;
    if (z == hull[seg].z) {
      out[i] = hull[seg].value;
    } else {
      const auto& a = hull[seg];
      const auto& b = hull[seg + 1];
      out[i] = a.value + (z - a.z) / (b.z - a.z) * (b.value - a.value);
      // Nearly collinear points dropped from the hull can round one ulp high.
      if (t.vals()[i] < out[i]) out[i] = t.vals()[i];
    }
  }
  return TabulatedIntegrand(t.zs(), std::move(out));
}

TabulatedIntegrand tabulate(const Integrand& f, const std::vector<double>& zs,
                            const TolerancePolicy& tol) {
  std::vector<ExtendedReal> vals;
  vals.reserve(zs.size());
  for (double z : zs) vals.push_back(eval(f, z, tol));
  return TabulatedIntegrand(zs, std::move(vals));
}

}  // namespace relaxlab
