#pragma once

#include "schurmix/specfun.hpp"

namespace schurmix {

// Central chi-square with nu > 0 degrees of freedom (nu need not be integer).
double chi2_pdf(double nu, double w);
double chi2_cdf(double nu, double w, const SeriesControl& ctl = {});

// Noncentral chi-square, noncentrality delta >= 0, as the Poisson(delta/2)
// mixture of central chi-squares with nu + 2l degrees of freedom.
double noncentral_chi2_pdf(double nu, double delta, double w, const SeriesControl& ctl = {});
double noncentral_chi2_cdf(double nu, double delta, double w, const SeriesControl& ctl = {});

// Beta(a, b) density on (0, 1); zero outside.
double beta_pdf_central(double a, double b, double u);

// Noncentral beta with noncentrality tau >= 0 attached to the second shape:
// the Poisson(tau/2) mixture of Beta(a, b + l) laws. (This is the law of a
// ratio chi2_2a / (chi2_2a + chi2_2b(tau)) with a noncentral denominator.)
double beta_pdf_noncentral(double a, double b, double tau, double u,
                           const SeriesControl& ctl = {});

// Regularized incomplete beta I_u(a, b) and its noncentral counterpart.
// Not part of the mixture pipeline itself; used by the u-law validation
// tests, cross-checked against quadrature of the densities.
double beta_cdf_central(double a, double b, double u, const SeriesControl& ctl = {});
double beta_cdf_noncentral(double a, double b, double tau, double u,
                           const SeriesControl& ctl = {});

// Parameter bundles for the two conditional laws the mixture is built from.
struct NoncentralChi2 {
  double nu;
  double delta;
  double pdf(double w, const SeriesControl& ctl = {}) const {
    return noncentral_chi2_pdf(nu, delta, w, ctl);
  }
  double cdf(double w, const SeriesControl& ctl = {}) const {
    return noncentral_chi2_cdf(nu, delta, w, ctl);
  }
};

struct NoncentralBeta {
  double a;
  double b;
  double tau;
  double pdf(double u, const SeriesControl& ctl = {}) const {
    return tau == 0.0 ? beta_pdf_central(a, b, u) : beta_pdf_noncentral(a, b, tau, u, ctl);
  }
  double cdf(double u, const SeriesControl& ctl = {}) const {
    return tau == 0.0 ? beta_cdf_central(a, b, u, ctl) : beta_cdf_noncentral(a, b, tau, u, ctl);
  }
};

}  // namespace schurmix
