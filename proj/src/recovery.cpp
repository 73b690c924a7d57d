#include "relaxlab/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaxlab/functional.hpp"

namespace relaxlab {

namespace {

// Slack for cell averages that land marginally outside [z*, z*+1]
// through rounding; anything larger is a broken invariant.
constexpr double kAverageSlack = 1e-9;

struct Piece {
  double end;
  double value;
};

void append(std::vector<Piece>& out, double end, double value) {
  if (!out.empty() && out.back().value == value) {
    out.back().end = end;
  } else {
    out.push_back({end, value});
  }
}

}  // namespace

PiecewiseConstantFn build_recovery(const PiecewiseConstantFn& u, int j, const TolerancePolicy& tol) {
  if (j < 1) throw std::invalid_argument("build_recovery: j must be >= 1");
  const auto r = relax_closed_form(u, tol);
  if (!r.feasible) throw NoRecoverySequence("build_recovery: relaxed energy is +inf, no recovery sequence");

  const double lower = r.z_star;
  const double upper = r.z_star + 1.0;
  const auto& bp = u.breakpoints();
  const auto& vals = u.values();

  std::vector<Piece> pieces;
  Eigen::Index first = 0;  // first interval of u that may overlap the current cell
  for (int i = 0; i < j; ++i) {
    const double lo = static_cast<double>(i) / j;
    const double hi = (i + 1 == j) ? 1.0 : static_cast<double>(i + 1) / j;
    while (first + 1 < u.intervals() && bp[first + 1] <= lo) ++first;

    bool at_wells = true;
    for (Eigen::Index k = first; k < u.intervals() && bp[k] < hi; ++k) {
      const double v = vals[k];
      if (std::abs(v - lower) > tol.eps_well && std::abs(v - upper) > tol.eps_well) {
        at_wells = false;
        break;
      }
    }

    if (at_wells) {
      for (Eigen::Index k = first; k < u.intervals() && bp[k] < hi; ++k) {
        const double end = std::min(hi, bp[k + 1]);
        const double v = std::abs(vals[k] - lower) <= tol.eps_well ? lower : upper;
        append(pieces, end, v);
      }
      continue;
    }

    const double a = average(u, lo, hi) - lower;
    if (a < -kAverageSlack || a > 1.0 + kAverageSlack)
      throw std::logic_error("build_recovery: cell average outside [z*, z*+1] in cell " + std::to_string(i));
    const double cut = lo + std::clamp(a, 0.0, 1.0) * (hi - lo);
    if (cut > lo && cut < hi) {
      append(pieces, cut, upper);
      append(pieces, hi, lower);
    } else {
      append(pieces, hi, cut >= hi ? upper : lower);
    }
  }

  Eigen::VectorXd out_bp(static_cast<Eigen::Index>(pieces.size()) + 1);
  Eigen::VectorXd out_v(static_cast<Eigen::Index>(pieces.size()));
  out_bp[0] = 0.0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    out_bp[static_cast<Eigen::Index>(k) + 1] = pieces[k].end;
    out_v[static_cast<Eigen::Index>(k)] = pieces[k].value;
  }
  out_bp[out_bp.size() - 1] = 1.0;
  return {std::move(out_bp), std::move(out_v)};
}

RecoveryReport recovery_report(const PiecewiseConstantFn& u, int j, int K, const TolerancePolicy& tol) {
  if (K < 0) throw std::invalid_argument("recovery_report: K must be >= 0");
  const auto uj = build_recovery(u, j, tol);
  RecoveryReport rep;
  rep.j = j;
  rep.energy = evaluate_F(uj, TripleWell{}, tol).value();
  rep.target = relax_closed_form(u, tol).value.value();
  rep.moment_errors.reserve(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) rep.moment_errors.push_back(std::abs(moment(uj, k) - moment(u, k)));
  return rep;
}

}  // namespace relaxlab
