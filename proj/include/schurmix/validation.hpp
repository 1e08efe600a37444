#pragma once

#include <optional>
#include <vector>

#include "schurmix/montecarlo.hpp"
#include "schurmix/specfun.hpp"

namespace schurmix {

// One check of the battery; passes when statistic <= threshold.
struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct ValidationConfig {
  std::uint64_t samples = 200000;
  std::uint64_t seed = 42;
  unsigned workers = 0;
  double alpha = 0.01;
  double tail_tol = 1e-10;
  SeriesControl ctl;
  // Fault injection: replaces tau in the analytic reference only, leaving the
  // simulation on the true model, so distribution checks must fail.
  std::optional<double> inject_tau;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;

  bool all_pass() const;
};

// Simulation-vs-analytic battery: weight normalization/nonnegativity/tail,
// KS of rho against the mixture CDF, KS of u against its beta law, empirical
// vs analytic MGF at several theta, and the MGF-PGF consistency identity.
ValidationReport run_validation(const GaussianMatrixSpec& spec, const ValidationConfig& cfg);

}  // namespace schurmix
