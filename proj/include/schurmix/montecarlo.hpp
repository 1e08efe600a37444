#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "schurmix/model.hpp"

namespace schurmix {

// Philox4x32-10 counter-based generator. The 64-bit key is the run seed; the
// 128-bit counter is (block | sample_index), so every sample index owns an
// independent substream. Results therefore do not depend on how indices are
// distributed over workers.
class Philox4x32 {
 public:
  Philox4x32(std::uint64_t seed, std::uint64_t sample_index);

  // One block: four 32-bit words.
  std::array<std::uint32_t, 4> operator()();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t index_;
  std::uint64_t block_ = 0;
};

// Uniform/normal view over a Philox substream. uniform() is in (0, 1);
// normal() is Box-Muller over consecutive uniforms (the sine mate is cached).
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t sample_index)
      : gen_(seed, sample_index) {}

  double uniform();
  double normal();

 private:
  Philox4x32 gen_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;

  std::uint64_t next_bits();
};

struct SchurSample {
  double w11dot2 = 0.0;
  double rho = 0.0;
  double u = 0.0;  // NaN in the central case (no u law there)
};

struct SimConfig {
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0: one thread per hardware core
};

struct SimResult {
  std::vector<SchurSample> samples;
  std::uint64_t redraws = 0;  // draws rejected for a singular W22
};

// One draw X = M + Z L', Z iid standard normal filled row-major.
Eigen::MatrixXd sample_matrix(const GaussianMatrixSpec& spec, NormalStream& stream);

// Schur complement w11 - w21' W22^{-1} w21 of W = X'X. The bordered form is
// the production path; the projection form (Householder QR of the trailing
// columns) exists as an independent cross-check.
double schur_of(const Eigen::MatrixXd& X);
double schur_bordered(const Eigen::MatrixXd& X);
double schur_projection(const Eigen::MatrixXd& X);

// u = m1_tilde' Q2 m1_tilde / |m1_tilde|^2 for the draw's trailing columns,
// clamped to [0, 1]. Requires a non-central case (m1_tilde != 0).
double u_of(const Eigen::MatrixXd& X, const DerivedParams& params);

// Deterministic given (spec, samples, seed): worker count only partitions
// indices. Draws whose W22 fails to factor are redrawn from the same
// substream and counted.
SimResult run_sim(const GaussianMatrixSpec& spec, const SimConfig& cfg);

// Two-sided KS statistic of an ascending-sorted sample against a CDF.
double ks_statistic(const std::vector<double>& sorted, const std::function<double(double)>& cdf);

// Kolmogorov critical value c(alpha)/sqrt(N), asymptotic form.
double ks_critical(double alpha, std::uint64_t n);

struct MgfEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Sample mean and standard error of exp(theta * rho), theta < 1/2.
MgfEstimate empirical_mgf(const std::vector<double>& rho, double theta);

// Provenance block attached to exported sample sets.
struct RunMeta {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t redraws = 0;
  std::string spec_hash;
};

// CSV: '#' metadata lines, then `index,w11dot2,rho,u` rows; doubles as
// shortest round-trip decimals. JSON: {"meta": ..., "data": column arrays}.
void write_samples_csv(std::ostream& os, const SimResult& result, const RunMeta& meta);
void write_samples_json(std::ostream& os, const SimResult& result, const RunMeta& meta);

}  // namespace schurmix
