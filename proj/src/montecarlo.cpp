#include "schurmix/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "schurmix/detail/format.hpp"

namespace schurmix {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> philox_round(std::array<std::uint32_t, 4> c,
                                                 std::array<std::uint32_t, 2> k) {
  std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
  std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t sample_index)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      index_(sample_index) {}

std::array<std::uint32_t, 4> Philox4x32::operator()() {
  std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(index_), static_cast<std::uint32_t>(index_ >> 32)};
  std::array<std::uint32_t, 2> key = key_;
  for (int r = 0; r < 10; ++r) {
    if (r) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    ctr = philox_round(ctr, key);
  }
  ++block_;
  return ctr;
}

std::uint64_t NormalStream::next_bits() {
  if (pos_ >= 3) {
    buf_ = gen_();
    pos_ = 0;
  }
  std::uint64_t v = (static_cast<std::uint64_t>(buf_[pos_]) << 32) | buf_[pos_ + 1];
  pos_ += 2;
  return v;
}

double NormalStream::uniform() {
  // 53 random bits, offset half a step: strictly inside (0, 1).
  return (static_cast<double>(next_bits() >> 11) + 0.5) * 0x1p-53;
}

double NormalStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

namespace {

Eigen::MatrixXd draw_matrix(const Eigen::MatrixXd& M, const Eigen::MatrixXd& L,
                            NormalStream& stream) {
  const auto n = M.rows(), p = M.cols();
  Eigen::MatrixXd Z(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) Z(i, j) = stream.normal();
  return M + Z * L.transpose();
}

}  // namespace

Eigen::MatrixXd sample_matrix(const GaussianMatrixSpec& spec, NormalStream& stream) {
  return draw_matrix(spec.M, spd_factor(spec.Sigma).L, stream);
}

double schur_bordered(const Eigen::MatrixXd& X) {
  const auto p = X.cols();
  const Eigen::VectorXd x1 = X.col(0);
  const Eigen::MatrixXd X2 = X.rightCols(p - 1);
  const Eigen::MatrixXd W22 = X2.transpose() * X2;
  const Eigen::VectorXd w21 = X2.transpose() * x1;
  SPDFactor f = spd_factor(W22);  // DefinitenessError -> caller redraws
  const Eigen::VectorXd y = f.L.triangularView<Eigen::Lower>().solve(w21);
  return x1.squaredNorm() - y.squaredNorm();
}

double schur_projection(const Eigen::MatrixXd& X) {
  const auto p = X.cols();
  const Eigen::VectorXd x1 = X.col(0);
  const Eigen::MatrixXd X2 = X.rightCols(p - 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(X2);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(X.rows(), p - 1);
  const Eigen::VectorXd r = x1 - Q * (Q.transpose() * x1);
  return r.squaredNorm();
}

double schur_of(const Eigen::MatrixXd& X) { return schur_bordered(X); }

double u_of(const Eigen::MatrixXd& X, const DerivedParams& params) {
  if (params.kind == Case::Central)
    throw CaseError("u_of: u is undefined in the central case");
  const auto p = X.cols();
  const Eigen::MatrixXd X2 = X.rightCols(p - 1);
  const Eigen::MatrixXd W22 = X2.transpose() * X2;
  const Eigen::VectorXd w2m = X2.transpose() * params.m1_tilde;
  SPDFactor f = spd_factor(W22);
  const Eigen::VectorXd y = f.L.triangularView<Eigen::Lower>().solve(w2m);
  double m2 = params.m1_tilde.squaredNorm();
  return std::clamp((m2 - y.squaredNorm()) / m2, 0.0, 1.0);
}

SimResult run_sim(const GaussianMatrixSpec& spec, const SimConfig& cfg) {
  DerivedParams params = derive_params(spec);
  const Eigen::MatrixXd L = spd_factor(spec.Sigma).L;
  const bool central = params.kind == Case::Central;

  SimResult out;
  out.samples.resize(cfg.samples);
  std::atomic<std::uint64_t> redraws{0};

  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, std::max<std::uint64_t>(cfg.samples, 1)));

  auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t local_redraws = 0;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      NormalStream stream(cfg.seed, idx);
      for (;;) {
        Eigen::MatrixXd X = draw_matrix(spec.M, L, stream);
        try {
          SchurSample s;
          s.w11dot2 = schur_bordered(X);
          s.rho = s.w11dot2 / params.sigma112;
          s.u = central ? std::numeric_limits<double>::quiet_NaN() : u_of(X, params);
          out.samples[idx] = s;
          break;
        } catch (const DefinitenessError&) {
          ++local_redraws;  // singular W22; continue the same substream
        }
      }
    }
    redraws.fetch_add(local_redraws, std::memory_order_relaxed);
  };

  if (workers <= 1) {
    worker(0, cfg.samples);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::uint64_t chunk = cfg.samples / workers, rem = cfg.samples % workers;
    std::uint64_t lo = 0;
    for (unsigned w = 0; w < workers; ++w) {
      std::uint64_t hi = lo + chunk + (w < rem ? 1 : 0);
      pool.emplace_back(worker, lo, hi);
      lo = hi;
    }
    for (auto& t : pool) t.join();
  }
  out.redraws = redraws.load();
  return out;
}

double ks_statistic(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
  const std::size_t n = sorted.size();
  if (n == 0) throw DomainError("ks_statistic: empty sample");
  if (!std::is_sorted(sorted.begin(), sorted.end()))
    throw DomainError("ks_statistic: sample must be sorted ascending");
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = cdf(sorted[i]);
    double hi = static_cast<double>(i + 1) / n - f;
    double lo = f - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

double ks_critical(double alpha, std::uint64_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("ks_critical: alpha must be in (0, 1)");
  if (n == 0) throw DomainError("ks_critical: n must be positive");
  return std::sqrt(-0.5 * std::log(0.5 * alpha)) / std::sqrt(static_cast<double>(n));
}

MgfEstimate empirical_mgf(const std::vector<double>& rho, double theta) {
  if (rho.empty()) throw DomainError("empirical_mgf: empty sample");
  if (!(theta < 0.5)) throw DomainError("empirical_mgf: theta must be < 1/2");
  double mean = 0.0;
  for (double r : rho) mean += std::exp(theta * r);
  mean /= static_cast<double>(rho.size());
  if (rho.size() < 2) return {mean, 0.0};
  double var = 0.0;
  for (double r : rho) {
    double d = std::exp(theta * r) - mean;
    var += d * d;
  }
  var /= static_cast<double>(rho.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(rho.size()))};
}

void write_samples_csv(std::ostream& os, const SimResult& result, const RunMeta& meta) {
  using detail::fmt;
  os << "# schurmix samples\n";
  os << "# seed=" << meta.seed << "\n";
  os << "# samples=" << meta.samples << "\n";
  os << "# redraws=" << meta.redraws << "\n";
  os << "# spec_hash=" << meta.spec_hash << "\n";
  os << "index,w11dot2,rho,u\n";
  for (std::size_t i = 0; i < result.samples.size(); ++i) {
    const auto& s = result.samples[i];
    os << i << ',' << fmt(s.w11dot2) << ',' << fmt(s.rho) << ',' << fmt(s.u) << '\n';
  }
}

void write_samples_json(std::ostream& os, const SimResult& result, const RunMeta& meta) {
  nlohmann::json j;
  j["meta"] = {{"seed", meta.seed},
               {"samples", meta.samples},
               {"redraws", meta.redraws},
               {"spec_hash", meta.spec_hash}};
  std::vector<double> w, r, u;
  w.reserve(result.samples.size());
  r.reserve(result.samples.size());
  u.reserve(result.samples.size());
  for (const auto& s : result.samples) {
    w.push_back(s.w11dot2);
    r.push_back(s.rho);
    u.push_back(s.u);
  }
  j["data"] = {{"w11dot2", std::move(w)}, {"rho", std::move(r)}, {"u", std::move(u)}};
  os << j.dump(2) << "\n";
}

}  // namespace schurmix
