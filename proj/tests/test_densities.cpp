#include "schurmix/densities.hpp"

#include <cmath>
#include <doctest.h>

#include "schurmix/quadrature.hpp"

using namespace schurmix;

TEST_CASE("chi2 pdf/cdf frozen values") {
  // mpmath 50dps
  CHECK(chi2_pdf(5.0, 4.0) == doctest::Approx(0.14397591070183480520).epsilon(1e-14));
  CHECK(chi2_cdf(5.0, 4.0) == doctest::Approx(0.45058404864721976739).epsilon(1e-13));
  CHECK(chi2_pdf(2.0, 0.0) == 0.5);
  CHECK(std::isinf(chi2_pdf(1.0, 0.0)));
  CHECK(chi2_pdf(4.0, 0.0) == 0.0);
  CHECK(chi2_cdf(3.0, 0.0) == 0.0);
  CHECK(chi2_pdf(3.0, -1.0) == 0.0);
  CHECK_THROWS_AS(chi2_pdf(0.0, 1.0), DomainError);
}

TEST_CASE("chi2 pdf integrates to cdf") {
  double got = integrate_zero_singular([](double w) { return chi2_pdf(3.0, w); }, 7.0, 1e-12);
  CHECK(got == doctest::Approx(chi2_cdf(3.0, 7.0)).epsilon(1e-10));
}

TEST_CASE("noncentral chi2 frozen values and reductions") {
  // mpmath 50dps
  CHECK(noncentral_chi2_pdf(2.0, 1.0, 1.0) ==
        doctest::Approx(0.23287980379682021825).epsilon(1e-13));
  CHECK(noncentral_chi2_cdf(2.0, 1.0, 3.0) ==
        doctest::Approx(0.62064365321954362734).epsilon(1e-13));
  // delta = 0 reduces exactly to the central functions
  CHECK(noncentral_chi2_pdf(5.0, 0.0, 2.5) == chi2_pdf(5.0, 2.5));
  CHECK(noncentral_chi2_cdf(5.0, 0.0, 2.5) == chi2_cdf(5.0, 2.5));
  CHECK(noncentral_chi2_pdf(3.0, 2.0, -0.5) == 0.0);
  CHECK_THROWS_AS(noncentral_chi2_pdf(2.0, -1.0, 1.0), DomainError);
}

TEST_CASE("noncentral chi2 cdf is monotone and saturates") {
  double nu = 3.0, delta = 4.0;
  double prev = 0.0;
  for (double w = 0.0; w <= 30.0; w += 0.5) {
    double v = noncentral_chi2_cdf(nu, delta, w);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
  double far = nu + delta + 40.0 * std::sqrt(2.0 * nu + 4.0 * delta);
  CHECK(noncentral_chi2_cdf(nu, delta, far) >= 1.0 - 1e-6);
}

TEST_CASE("noncentral chi2 mean by quadrature equals nu + delta") {
  double nu = 2.0, delta = 3.0;
  double bound = nu + delta + 40.0 * std::sqrt(2.0 * nu + 4.0 * delta);
  double mean = integrate_zero_singular(
      [&](double w) { return w * noncentral_chi2_pdf(nu, delta, w); }, bound, 1e-9);
  CHECK(mean == doctest::Approx(nu + delta).epsilon(1e-6));
}

TEST_CASE("NoncentralChi2 type forwards to the free functions") {
  NoncentralChi2 d{4.0, 1.5};
  CHECK(d.pdf(2.0) == noncentral_chi2_pdf(4.0, 1.5, 2.0));
  CHECK(d.cdf(2.0) == noncentral_chi2_cdf(4.0, 1.5, 2.0));
}

TEST_CASE("central beta pdf values and endpoints") {
  CHECK(beta_pdf_central(1.0, 1.0, 0.3) == doctest::Approx(1.0));
  CHECK(beta_pdf_central(2.0, 3.0, 0.4) ==
        doctest::Approx(12.0 * 0.4 * std::pow(0.6, 2)).epsilon(1e-14));
  CHECK(beta_pdf_central(1.5, 0.5, -0.1) == 0.0);
  CHECK(beta_pdf_central(1.5, 0.5, 1.1) == 0.0);
  CHECK(std::isinf(beta_pdf_central(0.5, 1.0, 0.0)));
  CHECK(std::isinf(beta_pdf_central(1.0, 0.5, 1.0)));
  CHECK_THROWS_AS(beta_pdf_central(0.0, 1.0, 0.5), DomainError);
}

TEST_CASE("noncentral beta pdf: frozen value, reduction, normalization") {
  // mpmath 50dps, components Beta(a, b+l)
  CHECK(beta_pdf_noncentral(1.5, 0.5, 2.0, 0.5) ==
        doctest::Approx(1.01206247328198173057).epsilon(1e-13));
  // tau = 0 reduction is exact
  for (double u : {0.1, 0.35, 0.8})
    CHECK(beta_pdf_noncentral(1.5, 1.0, 0.0, u) == beta_pdf_central(1.5, 1.0, u));
  // integrates to one (b = 1 keeps the u -> 1 endpoint finite for the
  // one-argument density; the singular-endpoint case b < 1 is exercised
  // through the cdf cross-checks below)
  double total = integrate_unit_beta(
      [](double u, double omu) {
        (void)omu;
        return beta_pdf_noncentral(1.5, 1.0, 1.5, u);
      },
      1e-11);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("beta cdfs: frozen values, quadrature cross-check, bounds") {
  // I_u(a, 1) = u^a exactly
  CHECK(beta_cdf_central(1.5, 1.0, 0.4) == doctest::Approx(std::pow(0.4, 1.5)).epsilon(1e-13));
  // mpmath 50dps
  CHECK(beta_cdf_noncentral(1.5, 1.0, 1.5, 0.4) ==
        doctest::Approx(0.40821081915739399403).epsilon(1e-12));
  CHECK(beta_cdf_noncentral(1.5, 0.5, 2.0, 0.5) ==
        doctest::Approx(0.45074193725454112052).epsilon(1e-12));
  CHECK(beta_cdf_central(2.0, 3.0, 0.0) == 0.0);
  CHECK(beta_cdf_central(2.0, 3.0, 1.0) == 1.0);
  CHECK(beta_cdf_noncentral(2.0, 3.0, 1.0, 1.0) == 1.0);

  // cdf equals the integral of the pdf, central and noncentral
  for (double u0 : {0.25, 0.6, 0.9}) {
    double ic = adaptive_simpson([](double u) { return beta_pdf_central(2.0, 1.5, u); }, 0.0,
                                 u0, 1e-12);
    CHECK(ic == doctest::Approx(beta_cdf_central(2.0, 1.5, u0)).epsilon(1e-9));
    double in = adaptive_simpson(
        [](double u) { return beta_pdf_noncentral(2.0, 1.5, 3.0, u); }, 0.0, u0, 1e-12);
    CHECK(in == doctest::Approx(beta_cdf_noncentral(2.0, 1.5, 3.0, u0)).epsilon(1e-9));
  }
}

TEST_CASE("noncentral beta shifts mass toward zero as tau grows") {
  // denominator noncentrality: larger tau -> stochastically smaller u
  double u = 0.5;
  double prev = beta_cdf_noncentral(1.5, 1.0, 0.0, u);
  for (double tau : {1.0, 2.0, 5.0, 10.0}) {
    double cur = beta_cdf_noncentral(1.5, 1.0, tau, u);
    CHECK(cur >= prev);  // CDF at fixed u increases with tau
    prev = cur;
  }
}

TEST_CASE("NoncentralBeta type forwards and handles tau = 0") {
  NoncentralBeta d{1.5, 1.0, 1.5};
  CHECK(d.pdf(0.3) == beta_pdf_noncentral(1.5, 1.0, 1.5, 0.3));
  CHECK(d.cdf(0.3) == beta_cdf_noncentral(1.5, 1.0, 1.5, 0.3));
  NoncentralBeta c{1.5, 1.0, 0.0};
  CHECK(c.pdf(0.3) == beta_pdf_central(1.5, 1.0, 0.3));
  CHECK(c.cdf(0.3) == beta_cdf_central(1.5, 1.0, 0.3));
}
