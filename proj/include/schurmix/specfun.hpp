#pragma once

#include "schurmix/errors.hpp"

namespace schurmix {

// Truncation policy shared by the series evaluators. rel_tol is the target
// relative truncation error of the series value; max_terms caps the series
// index (outer index for the double series) before ConvergenceError.
struct SeriesControl {
  double rel_tol = 1e-14;
  int max_terms = 10000;
};

// log Gamma(x) for x > 0.
double log_gamma(double x);

// Euler beta B(a, b), a > 0, b > 0.
double beta_fn(double a, double b);

// Pochhammer (x)_k = x (x+1) ... (x+k-1), k >= 0; (x)_0 = 1.
double rising_factorial(double x, int k);

// e^{-mu} mu^k / k!, evaluated in log space. mu >= 0, k >= 0.
double poisson_pmf(int k, double mu);

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a),
// a > 0, x >= 0. Series for x < a + 1, Lentz continued fraction otherwise.
double reg_lower_inc_gamma(double a, double x, const SeriesControl& ctl = {});

// Confluent hypergeometric 1F1(b; c; w), c > 0. Negative arguments are
// routed through the Kummer transform 1F1(b;c;w) = e^w 1F1(c-b;c;-w) so the
// series argument is never negative; the series itself accumulates in
// double-double because the transformed parameter c-b may be negative, which
// makes the leading terms alternate with heavy cancellation.
double kummer_1f1(double b, double c, double w, const SeriesControl& ctl = {});

// Humbert Phi2-type confluent series of two variables,
//   phi2(b, b2; c; w, z) = sum_{j,m} (b)_j (b2)_m / (c)_{j+m} w^j z^m / (j! m!),
// evaluated as sum_m [(b2)_m / (c)_m] z^m/m! * 1F1(b; c+m; w). c > 0.
double appell_phi2(double b, double b2, double c, double w, double z,
                   const SeriesControl& ctl = {});

}  // namespace schurmix
