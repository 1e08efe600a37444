#include "schurmix/mixture.hpp"

#include <algorithm>
#include <cmath>

#include "schurmix/densities.hpp"
#include "schurmix/quadrature.hpp"

namespace schurmix {

namespace {

void check_nu_p(int nu, int p, const char* who) {
  if (nu < 1) throw DomainError(std::string(who) + ": nu must be >= 1");
  if (p < 2) throw DomainError(std::string(who) + ": p must be >= 2");
}

void check_theta(double theta, const char* who) {
  if (!std::isfinite(theta) || theta >= 0.5)
    throw DomainError(std::string(who) + ": theta must be finite and < 1/2");
}

// One central-beta weight family at denominator parameter n/2 + l, scaled by
// `scale`, accumulated into `beta`. Terms are
//   scale * (lambda/2)^k / k! * (nu/2)_k / (n/2+l)_k * 1F1(nu/2+k; n/2+k+l; -lambda/2),
// all nonnegative; the family sums to `scale`, which certifies the truncation:
// the loop stops once the accumulated family mass is within `budget` of it.
// Returns the mass actually accumulated.
double accumulate_family(std::vector<double>& beta, double scale, int l, double v2, double n2,
                         double lambda, double budget, const SeriesControl& ctl) {
  const double hl = 0.5 * lambda;
  double coef = scale;  // scale * (lambda/2)^k / k! * (nu/2)_k / (n/2+l)_k
  double acc = 0.0;
  for (int k = 0; k < ctl.max_terms; ++k) {
    double term = coef * kummer_1f1(v2 + k, n2 + k + l, -hl, ctl);
    if (static_cast<std::size_t>(k) >= beta.size()) beta.resize(k + 1, 0.0);
    beta[k] += term;
    acc += term;
    if (scale - acc <= budget) return acc;
    coef *= hl * (v2 + k) / ((n2 + k + l) * (k + 1));
  }
  throw ConvergenceError("weights: family did not reach tolerance", acc, scale - acc);
}

double sup_component_pdf(int nu, std::size_t kmax, double w) {
  // g_{nu+2k}(w) as a function of k is unimodal; scan to the peak.
  double best = 0.0;
  double prev = -1.0;
  for (std::size_t k = 0;; ++k) {
    double g = chi2_pdf(nu + 2.0 * k, w);
    best = std::max(best, g);
    if (k >= kmax && g < prev) break;
    if (k > kmax + 100000) break;
    prev = g;
  }
  return best;
}

}  // namespace

double MixtureWeights::sum() const {
  double s = 0.0;
  for (double b : beta) s += b;
  return s;
}

MixtureWeights weights_central_beta(int nu, int p, double lambda, double tail_tol,
                                    const SeriesControl& ctl) {
  check_nu_p(nu, p, "weights_central_beta");
  if (!(lambda >= 0.0)) throw DomainError("weights_central_beta: lambda must be >= 0");
  MixtureWeights out;
  out.nu = nu;
  out.kind = Case::CentralBeta;
  const double v2 = 0.5 * nu, n2 = 0.5 * (nu + p - 1.0);
  double acc = accumulate_family(out.beta, 1.0, 0, v2, n2, lambda, tail_tol, ctl);
  out.tail_mass = std::max(0.0, 1.0 - acc);
  return out;
}

MixtureWeights weights_noncentral_beta(int nu, int p, double lambda, double tau,
                                       double tail_tol, const SeriesControl& ctl) {
  check_nu_p(nu, p, "weights_noncentral_beta");
  if (!(lambda >= 0.0)) throw DomainError("weights_noncentral_beta: lambda must be >= 0");
  if (!(tau >= 0.0)) throw DomainError("weights_noncentral_beta: tau must be >= 0");
  MixtureWeights out;
  out.nu = nu;
  out.kind = Case::NoncentralBeta;
  const double v2 = 0.5 * nu, n2 = 0.5 * (nu + p - 1.0);
  const double half_tau = 0.5 * tau;
  // Split the certified-mass budget between the outer Poisson(tau/2)
  // truncation and the inner families.
  const double outer_budget = 0.5 * tail_tol;
  double acc = 0.0, outer_cum = 0.0;
  for (int l = 0; l < ctl.max_terms; ++l) {
    double pl = poisson_pmf(l, half_tau);
    outer_cum += pl;
    // Inner budget is spread so that all families together miss at most
    // tail_tol/2; giving each family pl-proportional slack achieves that.
    acc += accumulate_family(out.beta, pl, l, v2, n2, lambda, 0.5 * tail_tol * pl, ctl);
    if (1.0 - outer_cum <= outer_budget && l >= half_tau) break;
    if (l + 1 == ctl.max_terms)
      throw ConvergenceError("weights: Poisson expansion did not reach tolerance", acc,
                             1.0 - acc);
  }
  out.tail_mass = std::max(0.0, 1.0 - acc);
  return out;
}

MixtureWeights weights(const DerivedParams& params, double tail_tol, const SeriesControl& ctl) {
  switch (params.kind) {
    case Case::Central:
      throw CaseError("weights: central case has no mixture expansion");
    case Case::CentralBeta:
      return weights_central_beta(params.nu, params.p, params.lambda, tail_tol, ctl);
    case Case::NoncentralBeta:
      return weights_noncentral_beta(params.nu, params.p, params.lambda, params.tau, tail_tol,
                                     ctl);
  }
  throw CaseError("weights: unknown case");
}

double mgf_central_beta(int nu, int p, double lambda, double theta, const SeriesControl& ctl) {
  check_nu_p(nu, p, "mgf_central_beta");
  check_theta(theta, "mgf_central_beta");
  const double v2 = 0.5 * nu, n2 = 0.5 * (nu + p - 1.0);
  const double base = std::pow(1.0 - 2.0 * theta, -v2);
  return base * kummer_1f1(v2, n2, lambda * theta / (1.0 - 2.0 * theta), ctl);
}

double mgf_noncentral_beta(int nu, int p, double lambda, double tau, double theta,
                           const SeriesControl& ctl) {
  check_nu_p(nu, p, "mgf_noncentral_beta");
  check_theta(theta, "mgf_noncentral_beta");
  const double v2 = 0.5 * nu, n2 = 0.5 * (nu + p - 1.0);
  const double base = std::pow(1.0 - 2.0 * theta, -v2);
  return base * std::exp(-0.5 * tau) *
         appell_phi2(v2, n2, n2, lambda * theta / (1.0 - 2.0 * theta), 0.5 * tau, ctl);
}

double mgf(const DerivedParams& params, double theta, const SeriesControl& ctl) {
  check_theta(theta, "mgf");
  switch (params.kind) {
    case Case::Central:
      return std::pow(1.0 - 2.0 * theta, -0.5 * params.nu);
    case Case::CentralBeta:
      return mgf_central_beta(params.nu, params.p, params.lambda, theta, ctl);
    case Case::NoncentralBeta:
      return mgf_noncentral_beta(params.nu, params.p, params.lambda, params.tau, theta, ctl);
  }
  throw CaseError("mgf: unknown case");
}

double pgf_central_beta(int nu, int p, double lambda, double s, const SeriesControl& ctl) {
  check_nu_p(nu, p, "pgf_central_beta");
  if (!std::isfinite(s)) throw DomainError("pgf_central_beta: s must be finite");
  const double v2 = 0.5 * nu, n2 = 0.5 * (nu + p - 1.0);
  return kummer_1f1(v2, n2, 0.5 * lambda * (s - 1.0), ctl);
}

double pgf_noncentral_beta(int nu, int p, double lambda, double tau, double s,
                           const SeriesControl& ctl) {
  check_nu_p(nu, p, "pgf_noncentral_beta");
  if (!std::isfinite(s)) throw DomainError("pgf_noncentral_beta: s must be finite");
  const double v2 = 0.5 * nu, n2 = 0.5 * (nu + p - 1.0);
  return std::exp(-0.5 * tau) * appell_phi2(v2, n2, n2, 0.5 * lambda * (s - 1.0), 0.5 * tau, ctl);
}

double pgf(const DerivedParams& params, double s, const SeriesControl& ctl) {
  switch (params.kind) {
    case Case::Central:
      throw CaseError("pgf: central case has no mixing index");
    case Case::CentralBeta:
      return pgf_central_beta(params.nu, params.p, params.lambda, s, ctl);
    case Case::NoncentralBeta:
      return pgf_noncentral_beta(params.nu, params.p, params.lambda, params.tau, s, ctl);
  }
  throw CaseError("pgf: unknown case");
}

double pdf_rho(const MixtureWeights& mw, double w) {
  if (!std::isfinite(w)) throw DomainError("pdf_rho: w must be finite");
  if (w < 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < mw.beta.size(); ++k)
    sum += mw.beta[k] * chi2_pdf(mw.nu + 2.0 * k, w);
  return sum;
}

double pdf_rho(const DerivedParams& params, double w, double tail_tol,
               const SeriesControl& ctl) {
  if (params.kind == Case::Central) return chi2_pdf(params.nu, w);
  return pdf_rho(weights(params, tail_tol, ctl), w);
}

double pdf_rho_bound(const MixtureWeights& mw, double w) {
  if (w <= 0.0) return 0.0;
  return mw.tail_mass * sup_component_pdf(mw.nu, mw.beta.size(), w);
}

double cdf_rho(const MixtureWeights& mw, double w, const SeriesControl& ctl) {
  if (!std::isfinite(w)) throw DomainError("cdf_rho: w must be finite");
  if (w <= 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < mw.beta.size(); ++k)
    sum += mw.beta[k] * chi2_cdf(mw.nu + 2.0 * k, w, ctl);
  return std::min(1.0, sum);
}

double cdf_rho(const DerivedParams& params, double w, double tail_tol,
               const SeriesControl& ctl) {
  if (params.kind == Case::Central) return chi2_cdf(params.nu, w, ctl);
  return cdf_rho(weights(params, tail_tol, ctl), w, ctl);
}

Interval cdf_rho_interval(const MixtureWeights& mw, double w, const SeriesControl& ctl) {
  double lo = cdf_rho(mw, w, ctl);
  return Interval{lo, std::min(1.0, lo + mw.tail_mass)};
}

double pdf_w11dot2(const DerivedParams& params, double x, double tail_tol,
                   const SeriesControl& ctl) {
  return pdf_rho(params, x / params.sigma112, tail_tol, ctl) / params.sigma112;
}

double cdf_w11dot2(const DerivedParams& params, double x, double tail_tol,
                   const SeriesControl& ctl) {
  return cdf_rho(params, x / params.sigma112, tail_tol, ctl);
}

double mean_rho(const DerivedParams& params, const SeriesControl& ctl) {
  const double nu = params.nu;
  switch (params.kind) {
    case Case::Central:
      return nu;
    case Case::CentralBeta:
      // E[u] = a / (a + b) for the central Beta(nu/2, (p-1)/2) mixing law.
      return nu + params.lambda * nu / (nu + params.p - 1.0);
    case Case::NoncentralBeta: {
      const double a = 0.5 * nu, b = 0.5 * (params.p - 1.0);
      auto integrand = [&](double u, double omu) {
        // noncentral Beta(a, b; tau) density (second shape shifted, b + l),
        // with 1-u passed in explicitly so the u -> 1 endpoint keeps full
        // precision.
        double half = 0.5 * params.tau;
        double sum = 0.0, cum = 0.0;
        for (int l = 0; l < ctl.max_terms; ++l) {
          double pl = poisson_pmf(l, half);
          cum += pl;
          double logpdf = (a - 1.0) * std::log(u) + (b + l - 1.0) * std::log(omu) -
                          (std::lgamma(a) + std::lgamma(b + l) - std::lgamma(a + b + l));
          sum += pl * std::exp(logpdf);
          if (1.0 - cum <= 1e-16 && l > half) break;
        }
        return u * sum;
      };
      double eu = integrate_unit_beta(integrand, 1e-12);
      return nu + params.lambda * eu;
    }
  }
  throw CaseError("mean_rho: unknown case");
}

}  // namespace schurmix
