#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schurmix/densities.hpp"
#include "schurmix/mixture.hpp"
#include "schurmix/model_json.hpp"
#include "schurmix/montecarlo.hpp"
#include "schurmix/validation.hpp"
#include "schurmix/version.hpp"

namespace py = pybind11;
using namespace schurmix;

namespace {

SeriesControl make_ctl(double rel_tol, int max_terms) {
  SeriesControl ctl;
  ctl.rel_tol = rel_tol;
  ctl.max_terms = max_terms;
  return ctl;
}

}  // namespace

PYBIND11_MODULE(_schurmix, m) {
  m.doc() = "chi-square mixture law of the scalar Schur complement of a noncentral Wishart";
  m.attr("__version__") = kVersion;

  py::register_exception<DomainError>(m, "SchurmixDomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
  py::register_exception<DefinitenessError>(m, "DefinitenessError", PyExc_ValueError);
  py::register_exception<RankError>(m, "RankError", PyExc_ValueError);
  py::register_exception<CaseError>(m, "CaseError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::enum_<Case>(m, "Case")
      .value("Central", Case::Central)
      .value("CentralBeta", Case::CentralBeta)
      .value("NoncentralBeta", Case::NoncentralBeta);

  py::class_<GaussianMatrixSpec>(m, "GaussianMatrixSpec")
      .def(py::init<Eigen::MatrixXd, Eigen::MatrixXd>(), py::arg("M"), py::arg("Sigma"))
      .def_readonly("n", &GaussianMatrixSpec::n)
      .def_readonly("p", &GaussianMatrixSpec::p)
      .def_readonly("M", &GaussianMatrixSpec::M)
      .def_readonly("Sigma", &GaussianMatrixSpec::Sigma);

  py::class_<DerivedParams>(m, "DerivedParams")
      .def_readonly("nu", &DerivedParams::nu)
      .def_readonly("p", &DerivedParams::p)
      .def_readonly("sigma112", &DerivedParams::sigma112)
      .def_readonly("m1_tilde", &DerivedParams::m1_tilde)
      .def_readonly("lam", &DerivedParams::lambda)
      .def_property_readonly("n", &DerivedParams::n)
      .def_readonly("tau", &DerivedParams::tau)
      .def_readonly("case", &DerivedParams::kind)
      .def("__repr__", [](const DerivedParams& d) {
        return "DerivedParams(case=" + to_string(d.kind) + ", nu=" + std::to_string(d.nu) +
               ", p=" + std::to_string(d.p) + ", lambda=" + std::to_string(d.lambda) +
               ", tau=" + std::to_string(d.tau) + ")";
      });

  py::class_<MixtureWeights>(m, "MixtureWeights")
      .def_readonly("beta", &MixtureWeights::beta)
      .def_readonly("tail_mass", &MixtureWeights::tail_mass)
      .def_readonly("nu", &MixtureWeights::nu)
      .def("sum", &MixtureWeights::sum);

  m.def("derive_params", &derive_params, py::arg("spec"), py::arg("zero_tol") = 1e-12,
        py::arg("rank_tol") = 1e-8);
  // "lam" because `lambda` is reserved in Python
  m.def("direct_params", &direct_params, py::arg("nu"), py::arg("p"), py::arg("lam"),
        py::arg("tau"));
  m.def("canonical_spec", &canonical_spec, py::arg("nu"), py::arg("p"), py::arg("lam"),
        py::arg("tau"));
  m.def("rank1_check", &rank1_check, py::arg("M"), py::arg("tol") = 1e-8);
  m.def("conditional_noncentrality", &conditional_noncentrality, py::arg("params"),
        py::arg("u"));
  m.def(
      "load_model",
      [](const std::string& text) {
        ModelInput in = load_model(nlohmann::json::parse(text));
        return py::make_tuple(in.spec, in.params);
      },
      py::arg("json_text"), "parse a model JSON string -> (spec, params)");

  m.def(
      "weights",
      [](const DerivedParams& p, double tol, double rel_tol, int max_terms) {
        return weights(p, tol, make_ctl(rel_tol, max_terms));
      },
      py::arg("params"), py::arg("tol") = 1e-10, py::arg("rel_tol") = 1e-14,
      py::arg("max_terms") = 10000);
  m.def(
      "mgf",
      [](const DerivedParams& p, double theta, double rel_tol, int max_terms) {
        return mgf(p, theta, make_ctl(rel_tol, max_terms));
      },
      py::arg("params"), py::arg("theta"), py::arg("rel_tol") = 1e-14,
      py::arg("max_terms") = 10000);
  m.def(
      "pgf",
      [](const DerivedParams& p, double s, double rel_tol, int max_terms) {
        return pgf(p, s, make_ctl(rel_tol, max_terms));
      },
      py::arg("params"), py::arg("s"), py::arg("rel_tol") = 1e-14, py::arg("max_terms") = 10000);
  m.def(
      "pdf_rho",
      [](const DerivedParams& p, double w, double tol) { return pdf_rho(p, w, tol); },
      py::arg("params"), py::arg("w"), py::arg("tol") = 1e-10);
  m.def(
      "cdf_rho",
      [](const DerivedParams& p, double w, double tol) { return cdf_rho(p, w, tol); },
      py::arg("params"), py::arg("w"), py::arg("tol") = 1e-10);
  m.def(
      "pdf_w11dot2",
      [](const DerivedParams& p, double x, double tol) { return pdf_w11dot2(p, x, tol); },
      py::arg("params"), py::arg("x"), py::arg("tol") = 1e-10);
  m.def(
      "cdf_w11dot2",
      [](const DerivedParams& p, double x, double tol) { return cdf_w11dot2(p, x, tol); },
      py::arg("params"), py::arg("x"), py::arg("tol") = 1e-10);
  m.def(
      "mean_rho", [](const DerivedParams& p) { return mean_rho(p); }, py::arg("params"));

  m.def("kummer_1f1",
        [](double b, double c, double w, double rel_tol, int max_terms) {
          return kummer_1f1(b, c, w, make_ctl(rel_tol, max_terms));
        },
        py::arg("b"), py::arg("c"), py::arg("w"), py::arg("rel_tol") = 1e-14,
        py::arg("max_terms") = 10000);
  m.def("appell_phi2",
        [](double b, double b2, double c, double w, double z, double rel_tol, int max_terms) {
          return appell_phi2(b, b2, c, w, z, make_ctl(rel_tol, max_terms));
        },
        py::arg("b"), py::arg("b2"), py::arg("c"), py::arg("w"), py::arg("z"),
        py::arg("rel_tol") = 1e-14, py::arg("max_terms") = 10000);
  m.def("chi2_pdf", &chi2_pdf, py::arg("nu"), py::arg("w"));
  m.def(
      "chi2_cdf", [](double nu, double w) { return chi2_cdf(nu, w); }, py::arg("nu"),
      py::arg("w"));
  m.def(
      "noncentral_chi2_pdf",
      [](double nu, double delta, double w) { return noncentral_chi2_pdf(nu, delta, w); },
      py::arg("nu"), py::arg("delta"), py::arg("w"));
  m.def(
      "noncentral_chi2_cdf",
      [](double nu, double delta, double w) { return noncentral_chi2_cdf(nu, delta, w); },
      py::arg("nu"), py::arg("delta"), py::arg("w"));
  m.def("beta_pdf_central", &beta_pdf_central, py::arg("a"), py::arg("b"), py::arg("u"));
  m.def(
      "beta_pdf_noncentral",
      [](double a, double b, double tau, double u) { return beta_pdf_noncentral(a, b, tau, u); },
      py::arg("a"), py::arg("b"), py::arg("tau"), py::arg("u"));

  py::class_<SchurSample>(m, "SchurSample")
      .def_readonly("w11dot2", &SchurSample::w11dot2)
      .def_readonly("rho", &SchurSample::rho)
      .def_readonly("u", &SchurSample::u);

  m.def(
      "run_sim",
      [](const GaussianMatrixSpec& spec, std::uint64_t samples, std::uint64_t seed,
         unsigned workers) {
        SimResult res = run_sim(spec, SimConfig{samples, seed, workers});
        std::vector<double> w(res.samples.size()), r(res.samples.size()), u(res.samples.size());
        for (std::size_t i = 0; i < res.samples.size(); ++i) {
          w[i] = res.samples[i].w11dot2;
          r[i] = res.samples[i].rho;
          u[i] = res.samples[i].u;
        }
        py::dict out;
        out["w11dot2"] = std::move(w);
        out["rho"] = std::move(r);
        out["u"] = std::move(u);
        out["redraws"] = res.redraws;
        return out;
      },
      py::arg("spec"), py::arg("samples"), py::arg("seed") = 0, py::arg("workers") = 0);
  m.def("schur_of", &schur_of, py::arg("X"));
  m.def("schur_projection", &schur_projection, py::arg("X"));
  m.def("u_of", &u_of, py::arg("X"), py::arg("params"));
  m.def("ks_statistic", &ks_statistic, py::arg("sorted_sample"), py::arg("cdf"));
  m.def("ks_critical", &ks_critical, py::arg("alpha"), py::arg("n"));
  m.def(
      "empirical_mgf",
      [](const std::vector<double>& rho, double theta) {
        MgfEstimate est = empirical_mgf(rho, theta);
        return py::make_tuple(est.value, est.std_error);
      },
      py::arg("rho"), py::arg("theta"));

  m.def(
      "validate",
      [](const GaussianMatrixSpec& spec, std::uint64_t samples, std::uint64_t seed,
         unsigned workers, double alpha) {
        ValidationConfig cfg;
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.workers = workers;
        cfg.alpha = alpha;
        ValidationReport rep = run_validation(spec, cfg);
        py::list checks;
        for (const auto& c : rep.checks) {
          py::dict d;
          d["name"] = c.name;
          d["pass"] = c.pass;
          d["statistic"] = c.statistic;
          d["threshold"] = c.threshold;
          checks.append(std::move(d));
        }
        py::dict out;
        out["all_pass"] = rep.all_pass();
        out["checks"] = std::move(checks);
        return out;
      },
      py::arg("spec"), py::arg("samples") = 200000, py::arg("seed") = 42,
      py::arg("workers") = 0, py::arg("alpha") = 0.01);
}
