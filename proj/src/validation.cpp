#include "schurmix/validation.hpp"

#include <algorithm>
#include <cmath>

#include "schurmix/densities.hpp"
#include "schurmix/detail/format.hpp"
#include "schurmix/mixture.hpp"

namespace schurmix {

namespace {

double scaled_diff(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(a));
}

}  // namespace

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

ValidationReport run_validation(const GaussianMatrixSpec& spec, const ValidationConfig& cfg) {
  DerivedParams params = derive_params(spec);
  if (cfg.inject_tau) {
    params.tau = *cfg.inject_tau;
    if (params.kind != Case::Central)
      params.kind = params.tau > 0.0 ? Case::NoncentralBeta : Case::CentralBeta;
  }
  const bool central = params.kind == Case::Central;

  ValidationReport rep;
  rep.samples = cfg.samples;
  rep.seed = cfg.seed;
  rep.alpha = cfg.alpha;
  auto add = [&rep](std::string name, double stat, double thr) {
    rep.checks.push_back({std::move(name), stat, thr, stat <= thr});
  };

  // Weight-family sanity. The central case has no expansion; it counts as the
  // degenerate mixture {beta_0 = 1}, which satisfies all three checks as-is.
  MixtureWeights mw;
  if (central) {
    mw.beta = {1.0};
    mw.nu = params.nu;
    mw.tail_mass = 0.0;
  } else {
    mw = weights(params, cfg.tail_tol, cfg.ctl);
  }
  add("weights_normalization", std::abs(mw.sum() + mw.tail_mass - 1.0), 1e-12);
  add("weights_tail_mass", mw.tail_mass, cfg.tail_tol);
  double min_beta = mw.beta.empty() ? 0.0 : *std::min_element(mw.beta.begin(), mw.beta.end());
  add("weights_nonnegative", std::max(0.0, -min_beta), 0.0);

  // MGF-PGF identity: M(theta) = (1-2 theta)^{-nu/2} G(1/(1-2 theta)).
  for (double theta : {-1.0, -0.1, 0.1, 0.4}) {
    double lhs = mgf(params, theta, cfg.ctl);
    double base = std::pow(1.0 - 2.0 * theta, -0.5 * params.nu);
    double rhs = central ? base : base * pgf(params, 1.0 / (1.0 - 2.0 * theta), cfg.ctl);
    add("mgf_pgf_identity_theta=" + detail::fmt(theta), scaled_diff(lhs, rhs), 1e-10);
  }

  // Simulation follows the actual spec regardless of any injected tau.
  SimConfig sim_cfg{cfg.samples, cfg.seed, cfg.workers};
  SimResult sim = run_sim(spec, sim_cfg);

  std::vector<double> rho(sim.samples.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = sim.samples[i].rho;

  const double ks_thr = ks_critical(cfg.alpha, cfg.samples);
  {
    std::vector<double> sorted = rho;
    std::sort(sorted.begin(), sorted.end());
    auto cdf = [&](double w) {
      return central ? chi2_cdf(params.nu, w, cfg.ctl) : cdf_rho(mw, w, cfg.ctl);
    };
    add("ks_rho", ks_statistic(sorted, cdf), ks_thr);
  }

  if (!central) {
    std::vector<double> u(sim.samples.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = sim.samples[i].u;
    std::sort(u.begin(), u.end());
    NoncentralBeta law{0.5 * params.nu, 0.5 * (params.p - 1.0), params.tau};
    add("ks_u", ks_statistic(u, [&](double x) { return law.cdf(x, cfg.ctl); }), ks_thr);
  }

  for (double theta : {-0.5, 0.1, 0.2}) {
    MgfEstimate est = empirical_mgf(rho, theta);
    double exact = mgf(params, theta, cfg.ctl);
    add("mgf_empirical_theta=" + detail::fmt(theta), std::abs(est.value - exact),
        3.0 * est.std_error);
  }

  return rep;
}

}  // namespace schurmix
