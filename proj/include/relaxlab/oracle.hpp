#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "relaxlab/integrand.hpp"
#include "relaxlab/numerics.hpp"
#include "relaxlab/pcfn.hpp"

namespace relaxlab {

/// Discretization of the weak topology used by the brute-force envelope
/// estimators: n cells grouped into `windows` equal windows whose averages
/// must track those of the target function.
struct OracleConfig {
  int n = 240;
  int windows = 12;
  double z_grid_step = 0.01;
  std::optional<double> delta;  // per-window average tolerance; 2/n when unset
  std::uint64_t seed = 0;
  int restarts = 16;
  int iterations = 2000;  // sweeps of n proposals per restart

  double effective_delta() const { return delta.value_or(2.0 / n); }
  int cells_per_window() const { return n / windows; }

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

/// Allowed gap between the closed form and the two-value oracle:
/// 2 z_grid_step + 4/n + 2 delta K.
double oracle_tolerance(const OracleConfig& cfg);

enum class OracleMode { ExactTwoValue, StochasticContinuous };

std::string_view to_string(OracleMode m);

struct OracleResult {
  ExtendedReal value = ExtendedReal::infinity();
  double best_z = 0.0;          // lower well (two-value) or smallest cell value (continuous)
  double upper_fraction = 0.0;  // measure of the upper well / of cells above the midrange
  OracleMode mode = OracleMode::ExactTwoValue;
};

/// Exhaustive minimum of the triple-well energy over cell-labelled two-valued
/// competitors {z, z+1} whose window averages track those of u.
OracleResult oracle_two_value(const PiecewiseConstantFn& u, const OracleConfig& cfg = {},
                              const TolerancePolicy& tol = kDefaultTolerance);

/// Seeded multistart local search for the envelope of a finite integrand over
/// grid functions with penalized window-average constraints. Throws
/// std::invalid_argument for integrands that take the value +inf.
OracleResult oracle_continuous(const PiecewiseConstantFn& u, const Integrand& f,
                               const OracleConfig& cfg = {},
                               const TolerancePolicy& tol = kDefaultTolerance);

/// A cross-check between two independent routes exceeded its tolerance.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClosedFormCheck {
  double closed;
  double oracle;
  double gap;
  double tolerance;
};

/// Compares relax_closed_form with oracle_two_value. Throws ConsistencyError
/// when the gap exceeds oracle_tolerance(cfg) and std::domain_error for
/// infeasible u.
ClosedFormCheck verify_closed_form(const PiecewiseConstantFn& u, const OracleConfig& cfg = {},
                                   const TolerancePolicy& tol = kDefaultTolerance);

/// Window averages of u on `windows` equal windows of (0,1).
Eigen::VectorXd window_averages(const PiecewiseConstantFn& u, int windows);

}  // namespace relaxlab
