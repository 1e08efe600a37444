#pragma once

#include <Eigen/Dense>
#include <string>

#include "schurmix/errors.hpp"

namespace schurmix {

// Which branch of the mixture representation applies.
//   Central:        m1_tilde = 0, the law is plain chi-square (no mixture).
//   CentralBeta:    m1_tilde != 0, M2 = 0; u follows a central beta.
//   NoncentralBeta: m1_tilde != 0, M2 != 0 (rank-one mean); u is noncentral beta.
enum class Case { Central, CentralBeta, NoncentralBeta };

std::string to_string(Case c);

// Row-wise Gaussian data matrix X (n x p), rows independent N(m_i, Sigma),
// M = E[X]. Construction validates n >= p >= 2, symmetry and positive
// definiteness of Sigma.
struct GaussianMatrixSpec {
  int n = 0;
  int p = 0;
  Eigen::MatrixXd M;
  Eigen::MatrixXd Sigma;

  GaussianMatrixSpec(Eigen::MatrixXd M_, Eigen::MatrixXd Sigma_);
};

// Lower-triangular Cholesky factor A = L L'.
struct SPDFactor {
  Eigen::MatrixXd L;

  int dim() const { return static_cast<int>(L.rows()); }
  // Solve A x = rhs via the two triangular systems.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;
  double log_det() const;
};

// Cholesky factorization without pivoting. Throws DefinitenessError carrying
// the index of the first nonpositive pivot (that index is part of the
// contract, which is why this is not delegated to a library routine).
SPDFactor spd_factor(const Eigen::MatrixXd& A);

// True when M has numerical rank <= 1: second singular value <= tol * first.
bool rank1_check(const Eigen::MatrixXd& M, double tol = 1e-8);

// Scalars of the mixture law, derived from a spec or given directly.
struct DerivedParams {
  int nu = 0;             // n - p + 1
  int p = 0;
  double sigma112 = 1.0;  // sigma_{11.2}, the scale of w_{11.2}
  Eigen::VectorXd m1_tilde;
  double lambda = 0.0;    // |m1_tilde|^2 / sigma_{11.2}
  double tau = 0.0;       // tr(Sigma22^{-1} M2' M2)
  Case kind = Case::Central;

  int n() const { return nu + p - 1; }
};

// Partition (column 1 | rest), Schur-complement the covariance, classify the
// case. zero_tol drives the lambda = 0 / tau = 0 decisions (relative);
// rank_tol is passed to rank1_check for the noncentral branch.
DerivedParams derive_params(const GaussianMatrixSpec& spec, double zero_tol = 1e-12,
                            double rank_tol = 1e-8);

// Parameters given directly (canonical scale sigma_{11.2} = 1).
DerivedParams direct_params(int nu, int p, double lambda, double tau);

// Canonical spec realizing the given parameters: Sigma = I_p and
// M = e_1 (sqrt(lambda), sqrt(tau), 0, ...)'. derive_params of this spec
// reproduces (nu, p, lambda, tau) exactly up to rounding.
GaussianMatrixSpec canonical_spec(int nu, int p, double lambda, double tau);

// delta(u) = lambda * u, the noncentrality of the conditional chi-square.
// Requires u in [0, 1].
double conditional_noncentrality(const DerivedParams& params, double u);

}  // namespace schurmix
