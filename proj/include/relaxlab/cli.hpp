#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "relaxlab/oracle.hpp"
#include "relaxlab/pcfn.hpp"

namespace relaxlab::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kConsistencyError = 2 };

struct ApproxRow {
  int n;
  double estimate;
};

struct ApproxReport {
  std::vector<ApproxRow> rows;
  double limit = 0.0;  // closed-form relaxed energy of the triple-well
  bool nondecreasing = true;
  bool bounded = true;
};

/// Slack allowed for search noise in the approximant experiment.
inline constexpr double kApproxSlack = 2e-2;

/// Envelope estimates for the finite approximants f_n, n in n_list, next to the
/// closed-form limit. Throws std::domain_error for infeasible u.
ApproxReport approx_experiment(const PiecewiseConstantFn& u, const std::vector<int>& n_list,
                               const OracleConfig& cfg);

/// Runs one subcommand; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relaxlab::cli
