#pragma once

#include <stdexcept>
#include <vector>

#include "relaxlab/numerics.hpp"
#include "relaxlab/pcfn.hpp"

namespace relaxlab {

/// Raised when the relaxed energy of u is +inf, so no finite-energy
/// sequence converges to u.
class NoRecoverySequence : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct RecoveryReport {
  int j = 0;
  double energy = 0.0;
  double target = 0.0;
  std::vector<double> moment_errors;  // |int (u_j - u) x^k|, k = 0..K
};

/// Two-valued function in {z*, z*+1} with the same cell averages as u on a
/// uniform partition into j cells.
///
/// Cells on which u already takes only the two well values are copied; in
/// every other cell the upper value fills a leading sub-interval whose length
/// matches the cell average. The measure of the upper set is mean - z*.
PiecewiseConstantFn build_recovery(const PiecewiseConstantFn& u, int j,
                                   const TolerancePolicy& tol = kDefaultTolerance);

RecoveryReport recovery_report(const PiecewiseConstantFn& u, int j, int K,
                               const TolerancePolicy& tol = kDefaultTolerance);

}  // namespace relaxlab
