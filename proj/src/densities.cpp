#include "schurmix/densities.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "schurmix/errors.hpp"

namespace schurmix {

namespace {

void check_shape(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) throw DomainError(std::string(what) + " must be > 0");
}

// Regularized incomplete beta by modified Lentz continued fraction.
double incbeta_cf(double a, double b, double u, int max_iter) {
  const double tiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * u / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * u / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * u / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return h;
  }
  throw ConvergenceError("beta_cdf_central: continued fraction stalled", h, 0.0);
}

}  // namespace

double chi2_pdf(double nu, double w) {
  check_shape(nu, "chi2_pdf: nu");
  if (!std::isfinite(w)) throw DomainError("chi2_pdf: w must be finite");
  if (w < 0.0) return 0.0;
  if (w == 0.0) {
    if (nu < 2.0) return std::numeric_limits<double>::infinity();
    return nu == 2.0 ? 0.5 : 0.0;
  }
  double h = 0.5 * nu;
  return std::exp((h - 1.0) * std::log(w) - 0.5 * w - h * std::numbers::ln2 -
                  std::lgamma(h));
}

double chi2_cdf(double nu, double w, const SeriesControl& ctl) {
  check_shape(nu, "chi2_cdf: nu");
  if (!std::isfinite(w)) throw DomainError("chi2_cdf: w must be finite");
  if (w <= 0.0) return 0.0;
  return reg_lower_inc_gamma(0.5 * nu, 0.5 * w, ctl);
}

double noncentral_chi2_pdf(double nu, double delta, double w, const SeriesControl& ctl) {
  check_shape(nu, "noncentral_chi2_pdf: nu");
  if (delta < 0.0) throw DomainError("noncentral_chi2_pdf: delta must be >= 0");
  if (delta == 0.0) return chi2_pdf(nu, w);
  if (w < 0.0) return 0.0;
  double half = 0.5 * delta;
  double sum = 0.0, cum = 0.0;
  for (int l = 0; l < ctl.max_terms; ++l) {
    double p = poisson_pmf(l, half);
    cum += p;
    sum += p * chi2_pdf(nu + 2.0 * l, w);
    // Remaining mixture components at this w are bounded by the running max
    // of the central pdf only loosely; the Poisson tail itself certifies once
    // nearly all mass is spent and the component pdf stops growing.
    if (1.0 - cum <= ctl.rel_tol && l > half) return sum;
  }
  throw ConvergenceError("noncentral_chi2_pdf: mixture did not converge", sum, 1.0 - cum);
}

double noncentral_chi2_cdf(double nu, double delta, double w, const SeriesControl& ctl) {
  check_shape(nu, "noncentral_chi2_cdf: nu");
  if (delta < 0.0) throw DomainError("noncentral_chi2_cdf: delta must be >= 0");
  if (delta == 0.0) return chi2_cdf(nu, w, ctl);
  if (w <= 0.0) return 0.0;
  double half = 0.5 * delta;
  double sum = 0.0, cum = 0.0;
  for (int l = 0; l < ctl.max_terms; ++l) {
    double p = poisson_pmf(l, half);
    double comp = chi2_cdf(nu + 2.0 * l, w, ctl);
    cum += p;
    sum += p * comp;
    // Components decrease in l, so the unspent Poisson mass bounds the tail.
    if ((1.0 - cum) * comp <= ctl.rel_tol && l > half) return sum;
  }
  throw ConvergenceError("noncentral_chi2_cdf: mixture did not converge", sum, 1.0 - cum);
}

double beta_pdf_central(double a, double b, double u) {
  check_shape(a, "beta_pdf_central: a");
  check_shape(b, "beta_pdf_central: b");
  if (!std::isfinite(u)) throw DomainError("beta_pdf_central: u must be finite");
  if (u < 0.0 || u > 1.0) return 0.0;
  if (u == 0.0) {
    if (a < 1.0) return std::numeric_limits<double>::infinity();
    return a == 1.0 ? 1.0 / beta_fn(a, b) : 0.0;
  }
  if (u == 1.0) {
    if (b < 1.0) return std::numeric_limits<double>::infinity();
    return b == 1.0 ? 1.0 / beta_fn(a, b) : 0.0;
  }
  return std::exp((a - 1.0) * std::log(u) + (b - 1.0) * std::log1p(-u) -
                  (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)));
}

double beta_pdf_noncentral(double a, double b, double tau, double u, const SeriesControl& ctl) {
  check_shape(a, "beta_pdf_noncentral: a");
  check_shape(b, "beta_pdf_noncentral: b");
  if (tau < 0.0) throw DomainError("beta_pdf_noncentral: tau must be >= 0");
  if (tau == 0.0) return beta_pdf_central(a, b, u);
  if (!std::isfinite(u)) throw DomainError("beta_pdf_noncentral: u must be finite");
  if (u < 0.0 || u > 1.0) return 0.0;
  double half = 0.5 * tau;
  double sum = 0.0, cum = 0.0;
  for (int l = 0; l < ctl.max_terms; ++l) {
    double p = poisson_pmf(l, half);
    cum += p;
    sum += p * beta_pdf_central(a, b + l, u);
    if (1.0 - cum <= ctl.rel_tol && l > half) return sum;
  }
  throw ConvergenceError("beta_pdf_noncentral: mixture did not converge", sum, 1.0 - cum);
}

double beta_cdf_central(double a, double b, double u, const SeriesControl& ctl) {
  check_shape(a, "beta_cdf_central: a");
  check_shape(b, "beta_cdf_central: b");
  if (!std::isfinite(u)) throw DomainError("beta_cdf_central: u must be finite");
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  double log_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(u) +
                  b * std::log1p(-u);
  double bt = std::exp(log_bt);
  if (u < (a + 1.0) / (a + b + 2.0))
    return bt * incbeta_cf(a, b, u, ctl.max_terms) / a;
  return 1.0 - bt * incbeta_cf(b, a, 1.0 - u, ctl.max_terms) / b;
}

double beta_cdf_noncentral(double a, double b, double tau, double u, const SeriesControl& ctl) {
  check_shape(a, "beta_cdf_noncentral: a");
  check_shape(b, "beta_cdf_noncentral: b");
  if (tau < 0.0) throw DomainError("beta_cdf_noncentral: tau must be >= 0");
  if (tau == 0.0) return beta_cdf_central(a, b, u, ctl);
  if (!std::isfinite(u)) throw DomainError("beta_cdf_noncentral: u must be finite");
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  double half = 0.5 * tau;
  double sum = 0.0, cum = 0.0;
  for (int l = 0; l < ctl.max_terms; ++l) {
    double p = poisson_pmf(l, half);
    double comp = beta_cdf_central(a, b + l, u, ctl);
    cum += p;
    sum += p * comp;
    // I_u(a, b+l) is bounded by 1, so the unspent Poisson mass bounds the tail.
    if (1.0 - cum <= ctl.rel_tol && l > half) return sum;
  }
  throw ConvergenceError("beta_cdf_noncentral: mixture did not converge", sum, 1.0 - cum);
}

}  // namespace schurmix
