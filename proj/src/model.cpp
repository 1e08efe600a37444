#include "schurmix/model.hpp"

#include <cmath>

namespace schurmix {

std::string to_string(Case c) {
  switch (c) {
    case Case::Central: return "Central";
    case Case::CentralBeta: return "CentralBeta";
    case Case::NoncentralBeta: return "NoncentralBeta";
  }
  return "?";
}

GaussianMatrixSpec::GaussianMatrixSpec(Eigen::MatrixXd M_, Eigen::MatrixXd Sigma_)
    : n(static_cast<int>(M_.rows())), p(static_cast<int>(M_.cols())), M(std::move(M_)),
      Sigma(std::move(Sigma_)) {
  if (p < 2) throw InputError("spec: p must be >= 2");
  if (n < p) throw InputError("spec: n must be >= p");
  if (Sigma.rows() != p || Sigma.cols() != p)
    throw InputError("spec: Sigma must be p x p");
  double scale = Sigma.cwiseAbs().maxCoeff();
  if ((Sigma - Sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale))
    throw InputError("spec: Sigma must be symmetric");
  spd_factor(Sigma);  // definiteness gate; throws DefinitenessError
}

Eigen::VectorXd SPDFactor::solve(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd y = L.triangularView<Eigen::Lower>().solve(rhs);
  return L.transpose().triangularView<Eigen::Upper>().solve(y);
}

Eigen::MatrixXd SPDFactor::solve(const Eigen::MatrixXd& rhs) const {
  Eigen::MatrixXd y = L.triangularView<Eigen::Lower>().solve(rhs);
  return L.transpose().triangularView<Eigen::Upper>().solve(y);
}

double SPDFactor::log_det() const {
  return 2.0 * L.diagonal().array().log().sum();
}

SPDFactor spd_factor(const Eigen::MatrixXd& A) {
  const auto d = A.rows();
  if (d == 0 || A.cols() != d) throw InputError("spd_factor: matrix must be square");
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double pivot = A(j, j) - L.row(j).head(j).squaredNorm();
    if (!(pivot > 0.0))
      throw DefinitenessError(
          "spd_factor: nonpositive pivot at index " + std::to_string(j),
          static_cast<int>(j));
    L(j, j) = std::sqrt(pivot);
    for (Eigen::Index i = j + 1; i < d; ++i) {
      double s = A(i, j) - L.row(i).head(j).dot(L.row(j).head(j));
      L(i, j) = s / L(j, j);
    }
  }
  return SPDFactor{std::move(L)};
}

bool rank1_check(const Eigen::MatrixXd& M, double tol) {
  if (M.rows() == 0 || M.cols() == 0) return true;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() < 2) return true;
  return sv(1) <= tol * sv(0);
}

DerivedParams derive_params(const GaussianMatrixSpec& spec, double zero_tol, double rank_tol) {
  const int n = spec.n, p = spec.p;
  const double sigma11 = spec.Sigma(0, 0);
  const Eigen::VectorXd sigma21 = spec.Sigma.block(1, 0, p - 1, 1);
  const Eigen::MatrixXd Sigma22 = spec.Sigma.block(1, 1, p - 1, p - 1);
  const Eigen::VectorXd m1 = spec.M.col(0);
  const Eigen::MatrixXd M2 = spec.M.rightCols(p - 1);

  SPDFactor f22 = spd_factor(Sigma22);
  const Eigen::VectorXd s = f22.solve(sigma21);  // Sigma22^{-1} sigma21

  DerivedParams out;
  out.nu = n - p + 1;
  out.p = p;
  out.sigma112 = sigma11 - sigma21.dot(s);
  if (!(out.sigma112 > 0.0))
    throw DefinitenessError("derive_params: sigma_{11.2} not positive", 0);
  out.m1_tilde = m1 - M2 * s;

  // tr(Sigma22^{-1} M2' M2) = |L22^{-1} M2'|_F^2
  const Eigen::MatrixXd Y =
      f22.L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd(M2.transpose()));
  const double tau_raw = Y.squaredNorm();

  const double m_scale = 1.0 + spec.M.cwiseAbs().maxCoeff();
  const bool m1t_zero = out.m1_tilde.lpNorm<Eigen::Infinity>() <= zero_tol * m_scale;
  const bool m2_zero = M2.size() == 0 || M2.cwiseAbs().maxCoeff() <= zero_tol * m_scale;

  if (m1t_zero) {
    out.kind = Case::Central;
    out.m1_tilde.setZero();
    out.lambda = 0.0;
    out.tau = m2_zero ? 0.0 : tau_raw;  // irrelevant to the law, kept for reporting
  } else if (m2_zero) {
    out.kind = Case::CentralBeta;
    out.lambda = out.m1_tilde.squaredNorm() / out.sigma112;
    out.tau = 0.0;
  } else {
    if (!rank1_check(spec.M, rank_tol))
      throw RankError("derive_params: noncentral case requires rank(M) <= 1");
    out.kind = Case::NoncentralBeta;
    out.lambda = out.m1_tilde.squaredNorm() / out.sigma112;
    out.tau = tau_raw;
  }
  return out;
}

DerivedParams direct_params(int nu, int p, double lambda, double tau) {
  if (nu < 1) throw InputError("direct_params: nu must be >= 1");
  if (p < 2) throw InputError("direct_params: p must be >= 2");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw InputError("direct_params: lambda must be finite and >= 0");
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw InputError("direct_params: tau must be finite and >= 0");
  DerivedParams out;
  out.nu = nu;
  out.p = p;
  out.sigma112 = 1.0;
  out.m1_tilde = Eigen::VectorXd::Zero(nu + p - 1);
  out.lambda = lambda;
  out.tau = tau;
  if (lambda == 0.0) {
    out.kind = Case::Central;
  } else {
    out.m1_tilde(0) = std::sqrt(lambda);
    out.kind = tau == 0.0 ? Case::CentralBeta : Case::NoncentralBeta;
  }
  return out;
}

GaussianMatrixSpec canonical_spec(int nu, int p, double lambda, double tau) {
  DerivedParams check = direct_params(nu, p, lambda, tau);  // validates arguments
  const int n = check.n();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, p);
  M(0, 0) = std::sqrt(lambda);
  M(0, 1) = std::sqrt(tau);
  return GaussianMatrixSpec(std::move(M), Eigen::MatrixXd::Identity(p, p));
}

double conditional_noncentrality(const DerivedParams& params, double u) {
  if (!(u >= 0.0 && u <= 1.0))
    throw DomainError("conditional_noncentrality: u must be in [0, 1]");
  return params.lambda * u;
}

}  // namespace schurmix
