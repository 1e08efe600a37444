// schurmix: chi-square mixture law of the scalar Schur complement of a
// noncentral Wishart matrix. Subcommands cover the derived parameters, the
// mixture weights, transform and distribution evaluation on grids, sampling,
// and a simulation-vs-analytic validation battery.
//
// Exit codes: 0 ok, 1 validation failure, 2 numeric non-convergence,
// 3 bad input (model file, schema, arguments, domains).

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "schurmix/densities.hpp"
#include "schurmix/detail/format.hpp"
#include "schurmix/mixture.hpp"
#include "schurmix/model_json.hpp"
#include "schurmix/montecarlo.hpp"
#include "schurmix/validation.hpp"
#include "schurmix/version.hpp"

namespace {

using schurmix::detail::fmt;

// Every subcommand writes to --out or stdout.
struct Output {
  std::string path;

  template <class Fn>
  void write(Fn&& fn) const {
    if (path.empty()) {
      fn(std::cout);
      return;
    }
    std::ofstream os(path);
    if (!os) throw schurmix::InputError("cannot open output file: " + path);
    fn(os);
  }
};

struct GridSpec {
  double start = 0.0, stop = 0.0;
  int count = 0;

  std::vector<double> points() const {
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i)
      xs[i] = count == 1 ? start : start + (stop - start) * i / (count - 1.0);
    return xs;
  }
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  char colon1 = 0, colon2 = 0;
  std::istringstream is(s);
  if (!(is >> g.start >> colon1 >> g.stop >> colon2 >> g.count) || colon1 != ':' ||
      colon2 != ':' || !is.eof() || g.count < 1)
    throw schurmix::InputError("grid must be start:stop:count with count >= 1, got '" + s + "'");
  return g;
}

unsigned env_worker_cap(unsigned workers) {
  if (const char* env = std::getenv("SCHURMIX_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1)
      throw schurmix::InputError("SCHURMIX_THREADS must be a positive integer");
    if (workers == 0 || workers > static_cast<unsigned>(cap))
      return static_cast<unsigned>(cap);
  }
  return workers;
}

void emit_table(const Output& out, const char* xname, const std::vector<double>& xs,
                const std::vector<double>& values, std::optional<double> tail_mass) {
  out.write([&](std::ostream& os) {
    os << xname << ",value\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
      os << fmt(xs[i]) << ',' << fmt(values[i]) << '\n';
    if (tail_mass) os << "tail_mass," << fmt(*tail_mass) << '\n';
  });
}

int run(int argc, char** argv) {
  CLI::App app{"scalar Schur complement of a noncentral Wishart: exact chi-square mixture"};
  app.set_version_flag("--version", std::string("schurmix ") + schurmix::kVersion);
  app.require_subcommand(1);

  std::string model_path, out_path, grid_str, format = "csv";
  double tol = 1e-10;
  schurmix::SeriesControl ctl;
  std::vector<double> thetas, svals;
  std::uint64_t samples = 10000, seed = 0;
  unsigned workers = 0;
  double alpha = 0.01;
  double inject_tau = -1.0;
  bool inject = false;

  auto add_model_arg = [&](CLI::App* cmd) {
    cmd->add_option("model", model_path, "model JSON ({M, Sigma} or {nu, p, lambda, tau})")
        ->required();
    cmd->add_option("--out", out_path, "write output here instead of stdout");
  };
  auto add_series_opts = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "certified mixture tail bound");
    cmd->add_option("--rel-tol", ctl.rel_tol, "series relative tolerance");
    cmd->add_option("--max-terms", ctl.max_terms, "series term cap");
  };

  auto* c_params = app.add_subcommand("params", "derived parameters and case");
  add_model_arg(c_params);

  auto* c_weights = app.add_subcommand("weights", "mixture weights beta_k");
  add_model_arg(c_weights);
  add_series_opts(c_weights);

  auto* c_pdf = app.add_subcommand("pdf", "density of rho on a grid");
  add_model_arg(c_pdf);
  add_series_opts(c_pdf);
  c_pdf->add_option("--grid", grid_str, "w grid start:stop:count")->required();

  auto* c_cdf = app.add_subcommand("cdf", "distribution function of rho on a grid");
  add_model_arg(c_cdf);
  add_series_opts(c_cdf);
  c_cdf->add_option("--grid", grid_str, "w grid start:stop:count")->required();

  auto* c_mgf = app.add_subcommand("mgf", "moment generating function at given theta");
  add_model_arg(c_mgf);
  add_series_opts(c_mgf);
  c_mgf->add_option("--theta", thetas, "evaluation points, theta < 1/2")->required();

  auto* c_pgf = app.add_subcommand("pgf", "mixing-index generating function at given s");
  add_model_arg(c_pgf);
  add_series_opts(c_pgf);
  c_pgf->add_option("--s", svals, "evaluation points")->required();

  auto* c_sim = app.add_subcommand("simulate", "sample (w11dot2, rho, u)");
  add_model_arg(c_sim);
  c_sim->add_option("--samples", samples, "number of draws");
  c_sim->add_option("--seed", seed, "RNG seed");
  c_sim->add_option("--workers", workers, "worker threads (0 = hardware)");
  c_sim->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* c_val = app.add_subcommand("validate", "simulation vs analytic battery");
  add_model_arg(c_val);
  add_series_opts(c_val);
  c_val->add_option("--samples", samples, "number of draws");
  c_val->add_option("--seed", seed, "RNG seed");
  c_val->add_option("--workers", workers, "worker threads (0 = hardware)");
  c_val->add_option("--alpha", alpha, "KS significance level");
  c_val->add_option("--inject-tau", inject_tau,
                    "fault injection: analytic tau override (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 3;
  }
  inject = c_val->count("--inject-tau") > 0;

  const Output out{out_path};

  try {
    schurmix::ModelInput model = schurmix::load_model_file(model_path);

    if (*c_params) {
      nlohmann::json j = schurmix::params_to_json(model.params);
      j["spec_hash"] = model.hash;
      j["form"] = model.direct ? "direct" : "full";
      out.write([&](std::ostream& os) { os << j.dump(2) << "\n"; });
    } else if (*c_weights) {
      schurmix::MixtureWeights mw = schurmix::weights(model.params, tol, ctl);
      out.write([&](std::ostream& os) {
        os << "k,beta_k\n";
        for (std::size_t k = 0; k < mw.beta.size(); ++k)
          os << k << ',' << fmt(mw.beta[k]) << '\n';
        os << "tail_mass," << fmt(mw.tail_mass) << '\n';
      });
    } else if (*c_pdf || *c_cdf) {
      GridSpec grid = parse_grid(grid_str);
      std::vector<double> xs = grid.points(), vals(xs.size());
      std::optional<double> tail;
      if (model.params.kind == schurmix::Case::Central) {
        for (std::size_t i = 0; i < xs.size(); ++i)
          vals[i] = *c_pdf ? schurmix::chi2_pdf(model.params.nu, xs[i])
                           : schurmix::chi2_cdf(model.params.nu, xs[i], ctl);
      } else {
        schurmix::MixtureWeights mw = schurmix::weights(model.params, tol, ctl);
        tail = mw.tail_mass;
        for (std::size_t i = 0; i < xs.size(); ++i)
          vals[i] = *c_pdf ? schurmix::pdf_rho(mw, xs[i]) : schurmix::cdf_rho(mw, xs[i], ctl);
      }
      emit_table(out, "w", xs, vals, tail);
    } else if (*c_mgf) {
      std::vector<double> vals(thetas.size());
      for (std::size_t i = 0; i < thetas.size(); ++i)
        vals[i] = schurmix::mgf(model.params, thetas[i], ctl);
      emit_table(out, "theta", thetas, vals, std::nullopt);
    } else if (*c_pgf) {
      std::vector<double> vals(svals.size());
      for (std::size_t i = 0; i < svals.size(); ++i)
        vals[i] = schurmix::pgf(model.params, svals[i], ctl);
      emit_table(out, "s", svals, vals, std::nullopt);
    } else if (*c_sim) {
      schurmix::SimConfig cfg{samples, seed, env_worker_cap(workers)};
      schurmix::SimResult res = schurmix::run_sim(model.spec, cfg);
      schurmix::RunMeta meta{seed, samples, res.redraws, model.hash};
      out.write([&](std::ostream& os) {
        if (format == "csv")
          schurmix::write_samples_csv(os, res, meta);
        else
          schurmix::write_samples_json(os, res, meta);
      });
    } else if (*c_val) {
      schurmix::ValidationConfig cfg;
      cfg.samples = samples;
      cfg.seed = seed;
      cfg.workers = env_worker_cap(workers);
      cfg.alpha = alpha;
      cfg.tail_tol = tol;
      cfg.ctl = ctl;
      if (inject) cfg.inject_tau = inject_tau;
      schurmix::ValidationReport rep = schurmix::run_validation(model.spec, cfg);
      nlohmann::json j;
      j["all_pass"] = rep.all_pass();
      j["alpha"] = rep.alpha;
      j["samples"] = rep.samples;
      j["seed"] = rep.seed;
      j["spec_hash"] = model.hash;
      j["checks"] = nlohmann::json::array();
      for (const auto& c : rep.checks)
        j["checks"].push_back({{"name", c.name},
                               {"pass", c.pass},
                               {"statistic", c.statistic},
                               {"threshold", c.threshold}});
      out.write([&](std::ostream& os) { os << j.dump(2) << "\n"; });
      if (!rep.all_pass()) return 1;
    }
    return 0;
  } catch (const schurmix::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const schurmix::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
