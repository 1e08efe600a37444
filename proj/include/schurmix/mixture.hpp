#pragma once

#include <vector>

#include "schurmix/model.hpp"
#include "schurmix/specfun.hpp"

namespace schurmix {

// Chi-square mixture representation of rho = w_{11.2} / sigma_{11.2}:
//   pdf(w) = sum_k beta_k g_{nu + 2k}(w),  beta_k >= 0,  sum_k beta_k = 1,
// truncated so the certified unaccounted mass is tail_mass <= tail_tol.
struct MixtureWeights {
  std::vector<double> beta;
  double tail_mass = 0.0;
  int nu = 0;
  Case kind = Case::CentralBeta;

  double sum() const;
};

// A point of a transform evaluated on a grid (theta for the MGF, s for the PGF).
struct TransformPoint {
  double x = 0.0;
  double value = 0.0;
};

// Mixture weights for the model's case. Central raises CaseError (the law is
// a plain chi-square; there is no mixture to expand).
MixtureWeights weights(const DerivedParams& params, double tail_tol = 1e-10,
                       const SeriesControl& ctl = {});

// Case-specific weight families. weights() dispatches to these; they are also
// callable directly, which is what the tau -> 0 reduction tests exercise.
MixtureWeights weights_central_beta(int nu, int p, double lambda, double tail_tol = 1e-10,
                                    const SeriesControl& ctl = {});
MixtureWeights weights_noncentral_beta(int nu, int p, double lambda, double tau,
                                       double tail_tol = 1e-10, const SeriesControl& ctl = {});

// Moment generating function of rho at theta < 1/2 (closed form, no
// truncation of the k-sum). Central: (1-2 theta)^{-nu/2}.
double mgf(const DerivedParams& params, double theta, const SeriesControl& ctl = {});
double mgf_central_beta(int nu, int p, double lambda, double theta,
                        const SeriesControl& ctl = {});
double mgf_noncentral_beta(int nu, int p, double lambda, double tau, double theta,
                           const SeriesControl& ctl = {});

// Probability generating function of the mixing index K: G(s) = sum_k beta_k s^k.
// Defined for |s| <= 1 and, since the closed form is an entire confluent
// series, usable at any s (the MGF-PGF identity evaluates it at 1/(1-2 theta)).
// Central raises CaseError.
double pgf(const DerivedParams& params, double s, const SeriesControl& ctl = {});
double pgf_central_beta(int nu, int p, double lambda, double s, const SeriesControl& ctl = {});
double pgf_noncentral_beta(int nu, int p, double lambda, double tau, double s,
                           const SeriesControl& ctl = {});

// Density and CDF of rho. The one-shot overloads compute the weights
// internally; the MixtureWeights overloads reuse a precomputed family (grids).
double pdf_rho(const DerivedParams& params, double w, double tail_tol = 1e-10,
               const SeriesControl& ctl = {});
double pdf_rho(const MixtureWeights& mw, double w);
double cdf_rho(const DerivedParams& params, double w, double tail_tol = 1e-10,
               const SeriesControl& ctl = {});
double cdf_rho(const MixtureWeights& mw, double w, const SeriesControl& ctl = {});

// Truncation error bound for pdf_rho at w: tail_mass * sup_k g_{nu+2k}(w).
double pdf_rho_bound(const MixtureWeights& mw, double w);

// CDF enclosure [partial, partial + tail_mass] (clipped to [0, 1]); the point
// estimate returned by cdf_rho is the lower end.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};
Interval cdf_rho_interval(const MixtureWeights& mw, double w, const SeriesControl& ctl = {});

// Unscaled variable w_{11.2} = sigma_{11.2} * rho.
double pdf_w11dot2(const DerivedParams& params, double x, double tail_tol = 1e-10,
                   const SeriesControl& ctl = {});
double cdf_w11dot2(const DerivedParams& params, double x, double tail_tol = 1e-10,
                   const SeriesControl& ctl = {});

// E[rho] = nu + lambda E[u]. Central/CentralBeta are closed form; the
// noncentral case integrates u against its noncentral beta density.
double mean_rho(const DerivedParams& params, const SeriesControl& ctl = {});

}  // namespace schurmix
