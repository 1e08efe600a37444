#include "schurmix/mixture.hpp"

#include <cmath>
#include <doctest.h>

#include "schurmix/densities.hpp"

using namespace schurmix;

namespace {

// |a - b| <= tol * max(1, |a|): absolute near zero, relative at scale.
void check_scaled(double got, double want, double tol) {
  CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
}

}  // namespace

// Reference values below were frozen from an independent arbitrary-precision
// evaluation of the closed forms (Poisson-weighted 1F1 sums at 50 digits).

TEST_CASE("central-beta weights at nu=3, n=4, lambda=2") {
  MixtureWeights mw = weights_central_beta(3, 2, 2.0, 1e-13);
  REQUIRE(mw.beta.size() > 10);
  CHECK(mw.kind == Case::CentralBeta);
  CHECK(mw.nu == 3);
  check_scaled(mw.beta[0], 0.48861446726427837097, 1e-12);
  check_scaled(mw.beta[1], 0.33219366407940667382, 1e-12);
  check_scaled(mw.beta[2], 0.13182964567090123251, 1e-12);
  check_scaled(mw.beta[5], 0.0014921376135318684202, 1e-12);
  check_scaled(mw.beta[10], 3.5609080152664612912e-8, 1e-12);
}

TEST_CASE("noncentral-beta weights at nu=3, n=5, lambda=2, tau=1.5") {
  MixtureWeights mw = weights_noncentral_beta(3, 3, 2.0, 1.5, 1e-13);
  REQUIRE(mw.beta.size() > 10);
  CHECK(mw.kind == Case::NoncentralBeta);
  check_scaled(mw.beta[0], 0.63412787940260102421, 1e-12);
  check_scaled(mw.beta[1], 0.26730758195629405638, 1e-12);
  check_scaled(mw.beta[2], 0.077276184445175772715, 1e-12);
  check_scaled(mw.beta[5], 0.00051173111415441027977, 1e-12);
  check_scaled(mw.beta[10], 7.9995736136800410237e-9, 1e-12);
}

TEST_CASE("weights are a certified sub-probability vector") {
  for (int nu : {1, 3, 10}) {
    for (int p : {2, 4}) {
      for (double lambda : {0.5, 5.0, 50.0}) {
        for (double tau : {0.0, 2.0, 20.0}) {
          CAPTURE(nu);
          CAPTURE(p);
          CAPTURE(lambda);
          CAPTURE(tau);
          MixtureWeights mw = weights(direct_params(nu, p, lambda, tau), 1e-10);
          CHECK(mw.tail_mass >= 0.0);
          CHECK(mw.tail_mass <= 1e-10);
          CHECK(std::abs(mw.sum() + mw.tail_mass - 1.0) <= 1e-12);
          for (double b : mw.beta) CHECK(b >= 0.0);
        }
      }
    }
  }
}

TEST_CASE("weights dispatch honours the case") {
  CHECK_THROWS_AS(weights(direct_params(3, 2, 0.0, 0.0)), CaseError);
  CHECK_THROWS_AS(pgf(direct_params(3, 2, 0.0, 0.0), 0.5), CaseError);
  MixtureWeights mw = weights(direct_params(3, 3, 2.0, 1.5));
  CHECK(mw.kind == Case::NoncentralBeta);
}

TEST_CASE("tau = 0 collapses the noncentral family onto the central one, bitwise") {
  MixtureWeights nc = weights_noncentral_beta(3, 2, 2.0, 0.0, 1e-11);
  MixtureWeights cb = weights_central_beta(3, 2, 2.0, 1e-11);
  REQUIRE(nc.beta.size() == cb.beta.size());
  for (std::size_t k = 0; k < cb.beta.size(); ++k) CHECK(nc.beta[k] == cb.beta[k]);
  CHECK(nc.tail_mass == cb.tail_mass);
  for (double theta : {-1.0, -0.1, 0.1, 0.4})
    CHECK(mgf_noncentral_beta(3, 2, 2.0, 0.0, theta) == mgf_central_beta(3, 2, 2.0, theta));
  for (double s : {0.0, 0.3, 1.0})
    CHECK(pgf_noncentral_beta(3, 2, 2.0, 0.0, s) == pgf_central_beta(3, 2, 2.0, s));
}

TEST_CASE("moment generating function") {
  check_scaled(mgf_central_beta(3, 2, 2.0, 0.2), 3.59433753760033056580, 1e-12);
  check_scaled(mgf_noncentral_beta(3, 3, 2.0, 1.5, 0.2), 3.0307766242411829682, 1e-12);

  DerivedParams central = direct_params(3, 2, 0.0, 0.0);
  CHECK(mgf(central, 0.2) == doctest::Approx(std::pow(0.6, -1.5)).epsilon(1e-14));
  CHECK(mgf(direct_params(3, 2, 2.0, 0.0), 0.2) ==
        doctest::Approx(mgf_central_beta(3, 2, 2.0, 0.2)).epsilon(1e-15));

  CHECK(mgf(central, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mgf(direct_params(3, 3, 2.0, 1.5), 0.0) == doctest::Approx(1.0).epsilon(1e-13));

  CHECK_THROWS_AS(mgf(central, 0.5), DomainError);
  CHECK_THROWS_AS(mgf(central, 0.7), DomainError);
}

TEST_CASE("probability generating function") {
  check_scaled(pgf_central_beta(3, 2, 2.0, 0.5), 0.69290453344235111721, 1e-12);
  check_scaled(pgf_noncentral_beta(3, 3, 2.0, 1.5, 0.5), 0.78950228799920785054, 1e-12);

  // G(1) = 1 and G(0) = beta_0 for both regimes.
  CHECK(pgf_central_beta(3, 2, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(pgf_noncentral_beta(3, 3, 2.0, 1.5, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  check_scaled(pgf_central_beta(3, 2, 2.0, 0.0), 0.48861446726427837097, 1e-12);
  check_scaled(pgf_noncentral_beta(3, 3, 2.0, 1.5, 0.0), 0.63412787940260102421, 1e-12);

  // G(s) agrees with the truncated weight sum up to the certified tail.
  for (double s : {0.3, 0.7, 1.0}) {
    MixtureWeights mw = weights_noncentral_beta(3, 3, 2.0, 1.5, 1e-10);
    double partial = 0.0, sk = 1.0;
    for (double b : mw.beta) {
      partial += b * sk;
      sk *= s;
    }
    CHECK(std::abs(pgf_noncentral_beta(3, 3, 2.0, 1.5, s) - partial) <=
          mw.tail_mass + 1e-12);
  }
}

TEST_CASE("MGF equals the PGF evaluated at 1/(1 - 2 theta)") {
  for (double theta : {-1.0, -0.1, 0.1, 0.4}) {
    CAPTURE(theta);
    const double base3 = std::pow(1.0 - 2.0 * theta, -1.5);
    double m = mgf_central_beta(3, 2, 2.0, theta);
    double g = pgf_central_beta(3, 2, 2.0, 1.0 / (1.0 - 2.0 * theta));
    check_scaled(base3 * g, m, 1e-12);

    m = mgf_noncentral_beta(3, 3, 2.0, 1.5, theta);
    g = pgf_noncentral_beta(3, 3, 2.0, 1.5, 1.0 / (1.0 - 2.0 * theta));
    check_scaled(base3 * g, m, 1e-12);
  }
}

TEST_CASE("density and distribution of rho") {
  DerivedParams cb = direct_params(3, 2, 2.0, 0.0);
  DerivedParams nc = direct_params(3, 3, 2.0, 1.5);

  check_scaled(pdf_rho(cb, 2.5, 1e-13), 0.14932843337106564320, 1e-12);
  check_scaled(pdf_rho(nc, 2.5, 1e-13), 0.16117164116028210700, 1e-12);
  check_scaled(cdf_rho(cb, 3.0, 1e-13), 0.41349722951367253628, 1e-12);
  check_scaled(cdf_rho(nc, 3.0, 1e-13), 0.47552443330208539588, 1e-12);

  CHECK(pdf_rho(cb, -1.0) == 0.0);
  CHECK(cdf_rho(cb, 0.0) == 0.0);
  CHECK(cdf_rho(cb, -2.0) == 0.0);

  // Central dispatch falls back to the plain chi-square.
  DerivedParams central = direct_params(3, 2, 0.0, 0.0);
  CHECK(pdf_rho(central, 2.5) == doctest::Approx(chi2_pdf(3.0, 2.5)).epsilon(1e-15));
  CHECK(cdf_rho(central, 2.5) == doctest::Approx(chi2_cdf(3.0, 2.5)).epsilon(1e-15));

  // Monotone, and saturating far in the right tail.
  double prev = 0.0;
  MixtureWeights mw = weights(nc);
  for (double w : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    double c = cdf_rho(mw, w);
    CHECK(c >= prev);
    prev = c;
  }
  double far = 3.0 + 2.0 + 40.0 * std::sqrt(2.0 * 3.0 + 4.0 * 2.0);
  CHECK(cdf_rho(nc, far) >= 1.0 - 1e-6);
}

TEST_CASE("truncation error certificates") {
  DerivedParams nc = direct_params(3, 3, 2.0, 1.5);
  MixtureWeights loose = weights(nc, 1e-6);
  MixtureWeights tight = weights(nc, 1e-13);
  for (double w : {0.5, 2.0, 5.0, 12.0}) {
    CAPTURE(w);
    double approx = pdf_rho(loose, w);
    double exact = pdf_rho(tight, w);
    CHECK(std::abs(approx - exact) <= pdf_rho_bound(loose, w) + 1e-13);

    Interval box = cdf_rho_interval(loose, w);
    double cref = cdf_rho(tight, w);
    CHECK(box.lo <= cref + 1e-12);
    CHECK(box.hi >= cref - 1e-12);
    CHECK(box.hi - box.lo <= loose.tail_mass + 1e-15);
  }
  CHECK(pdf_rho_bound(tight, 2.0) <= pdf_rho_bound(loose, 2.0));
  CHECK(pdf_rho_bound(loose, 0.0) == 0.0);
}

TEST_CASE("w_{11.2} is the sigma-scaled variable") {
  // Non-canonical scale: sigma_{11.2} = 1.64 for this spec.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(3, 2);
  M(0, 0) = 1.5;
  M(1, 0) = 3.0;
  Eigen::MatrixXd Sigma(2, 2);
  Sigma << 2.0, 0.6, 0.6, 1.0;
  DerivedParams d = derive_params(GaussianMatrixSpec(M, Sigma));
  REQUIRE(d.sigma112 == doctest::Approx(1.64).epsilon(1e-15));

  for (double x : {0.8, 2.5, 6.0}) {
    CHECK(pdf_w11dot2(d, x) ==
          doctest::Approx(pdf_rho(d, x / d.sigma112) / d.sigma112).epsilon(1e-14));
    CHECK(cdf_w11dot2(d, x) == doctest::Approx(cdf_rho(d, x / d.sigma112)).epsilon(1e-14));
  }
  // Total mass is preserved by the change of scale.
  double far = (3.0 + d.lambda + 40.0 * std::sqrt(2.0 * 3.0 + 4.0 * d.lambda)) * d.sigma112;
  CHECK(cdf_w11dot2(d, far) >= 1.0 - 1e-6);
}

TEST_CASE("mean of rho") {
  CHECK(mean_rho(direct_params(3, 2, 0.0, 0.0)) == 3.0);
  CHECK(mean_rho(direct_params(3, 2, 2.0, 0.0)) == doctest::Approx(4.5).epsilon(1e-14));
  // Noncentral value agrees with the Poisson-mixture closed form
  // nu + lambda sum_l pois_l(tau/2) a/(a+b+l).
  check_scaled(mean_rho(direct_params(3, 3, 2.0, 1.5)), 3.9804825346663541187, 1e-9);
}
