// Python bindings for the main operations: model registry, Hamiltonian
// flows, exponential maps, verification suites and the composition-algebra
// utilities.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geoflow/algebra.hpp"
#include "geoflow/io.hpp"
#include "geoflow/models.hpp"
#include "geoflow/verify.hpp"
#include "geoflow/version.hpp"

namespace py = pybind11;
namespace gf = geoflow;

namespace {

gf::Vec to_vec(const std::vector<double>& v) {
  gf::Vec out(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i];
  return out;
}

std::vector<double> from_vec(const gf::Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

gf::FlowConfig make_cfg(double step, const std::string& integrator) {
  gf::FlowConfig cfg;
  cfg.step = step;
  if (integrator == "rk45") cfg.integrator = gf::Integrator::RK45Adaptive;
  else if (integrator == "midpoint") cfg.integrator = gf::Integrator::ImplicitMidpoint;
  return cfg;
}

py::dict describe_dict(const gf::ModelSpace& m) {
  const auto d = gf::describe(m);
  py::dict out;
  out["name"] = d.name;
  out["dim"] = d.dim;
  out["hdim"] = d.hdim;
  out["vdim"] = d.vdim;
  out["charts"] = d.charts;
  out["submersion"] = d.has_submersion;
  py::dict decl;
  decl["v_integrable"] = d.declared.v_integrable;
  decl["totally_geodesic"] = d.declared.totally_geodesic;
  decl["riemannian_foliation"] = d.declared.riemannian_foliation;
  decl["principal_bundle"] = d.declared.principal_bundle;
  out["declared"] = decl;
  return out;
}

}  // namespace

PYBIND11_MODULE(_geoflow, m) {
  m.doc() = "Riemannian and sub-Riemannian geodesic flows on model spaces";
  m.attr("__version__") = gf::kVersion;

  m.def("model_names", &gf::model_names);

  py::class_<gf::ModelSpace, std::shared_ptr<gf::ModelSpace>>(m, "Model")
      .def_property_readonly("name", [](const gf::ModelSpace& s) { return s.name; })
      .def_property_readonly("dim", [](const gf::ModelSpace& s) { return s.dim; })
      .def("describe", [](const gf::ModelSpace& s) { return describe_dict(s); })
      .def("metric",
           [](const gf::ModelSpace& s, const std::vector<double>& x, int chart) {
             const gf::Mat g = gf::metric_at(s, gf::Point{chart, to_vec(x)});
             std::vector<std::vector<double>> rows;
             for (int i = 0; i < g.rows(); ++i)
               rows.push_back(std::vector<double>(g.row(i).begin(), g.row(i).end()));
             return rows;
           },
           py::arg("x"), py::arg("chart") = 0)
      .def("hamiltonian",
           [](const gf::ModelSpace& s, const std::string& which, const std::vector<double>& x,
              const std::vector<double>& p, int chart) {
             const gf::Ham h = which == "v"   ? gf::Ham::Vertical
                               : which == "g" ? gf::Ham::Full
                                              : gf::Ham::Horizontal;
             return gf::hamiltonian(s, s.cometric(h), gf::Point{chart, to_vec(x)}, to_vec(p));
           },
           py::arg("which"), py::arg("x"), py::arg("p"), py::arg("chart") = 0)
      .def("poisson_bracket",
           [](const gf::ModelSpace& s, const std::vector<double>& x,
              const std::vector<double>& p) {
             return gf::poisson_bracket(s, s.comet_h, s.comet_v, gf::Point{0, to_vec(x)},
                                        to_vec(p));
           })
      .def("exp_sr",
           [](const gf::ModelSpace& s, const std::vector<double>& x, const std::vector<double>& p,
              double t, double step) {
             const gf::Point end =
                 gf::exp_sr(s, gf::Point{0, to_vec(x)}, to_vec(p), t, make_cfg(step, "rk4"));
             return py::make_tuple(end.chart, from_vec(end.x));
           },
           py::arg("x"), py::arg("p"), py::arg("t") = 1.0, py::arg("step") = 1e-3)
      .def("exp_r",
           [](const gf::ModelSpace& s, const std::vector<double>& x, const std::vector<double>& v,
              double t, double step) {
             const auto res =
                 gf::exp_r(s, gf::Point{0, to_vec(x)}, to_vec(v), t, make_cfg(step, "rk4"));
             return py::make_tuple(res.endpoint.chart, from_vec(res.endpoint.x));
           },
           py::arg("x"), py::arg("v"), py::arg("t") = 1.0, py::arg("step") = 1e-3)
      .def("flow",
           [](const gf::ModelSpace& s, const std::string& which, const std::vector<double>& x,
              const std::vector<double>& p, double t, double step,
              const std::string& integrator) {
             const gf::Ham h = which == "v"   ? gf::Ham::Vertical
                               : which == "g" ? gf::Ham::Full
                                              : gf::Ham::Horizontal;
             const gf::Trajectory traj = gf::flow(
                 s, h, gf::PhaseState{gf::Point{0, to_vec(x)}, to_vec(p), 0.0}, t,
                 make_cfg(step, integrator));
             py::dict out;
             out["t"] = traj.t;
             std::vector<std::vector<double>> xs, ps;
             std::vector<int> charts;
             for (size_t i = 0; i < traj.size(); ++i) {
               xs.push_back(from_vec(traj.x[i].x));
               ps.push_back(from_vec(traj.p[i]));
               charts.push_back(traj.x[i].chart);
             }
             out["x"] = xs;
             out["p"] = ps;
             out["chart"] = charts;
             out["energy"] = traj.energy;
             out["energy_drift"] = traj.max_energy_drift;
             out["switches"] = traj.switches.size();
             return out;
           },
           py::arg("which"), py::arg("x"), py::arg("p"), py::arg("t") = 1.0,
           py::arg("step") = 1e-3, py::arg("integrator") = "rk4")
      .def("foliation_report",
           [](const gf::ModelSpace& s, int samples) {
             const auto rep = gf::foliation_diagnostics(s, s.sample_points(samples));
             py::dict out;
             out["tg_residual"] = rep.tg_residual;
             out["rf_residual"] = rep.rf_residual;
             out["nabla_hat_g_residual"] = rep.rnabla_g_residual;
             out["trace_residual"] = rep.trace_residual;
             out["tg_ok"] = rep.tg_ok;
             out["rf_ok"] = rep.rf_ok;
             out["samples"] = rep.samples;
             return out;
           },
           py::arg("samples") = 10)
      .def("factorization",
           [](const gf::ModelSpace& s, const std::vector<double>& x, const std::vector<double>& p,
              const std::vector<double>& t_grid, double step) {
             const auto rep = gf::factorization_check(s, gf::Point{0, to_vec(x)}, to_vec(p),
                                                      t_grid, make_cfg(step, "rk4"));
             py::dict out;
             out["t_grid"] = rep.t_grid;
             out["primary"] = rep.primary;
             out["alternate"] = rep.alternate;
             return out;
           },
           py::arg("x"), py::arg("p"), py::arg("t_grid"), py::arg("step") = 1e-3);

  m.def(
      "get_model",
      [](const std::string& name, bool recheck) {
        return std::const_pointer_cast<gf::ModelSpace>(gf::get_model(name, recheck));
      },
      py::arg("name"), py::arg("recheck") = false);

  m.def("verify",
        [](const std::string& suite, const std::string& model, std::uint64_t seed, double step) {
          const auto ms = gf::get_model(model);
          gf::VerifyOptions opt;
          opt.seed = seed;
          opt.flow.step = step;
          const gf::SuiteResult r = gf::run_suite(suite, *ms, opt);
          py::dict out;
          out["suite"] = r.suite;
          out["model"] = r.model;
          out["identity_holds"] = r.identity_holds;
          out["expected_identity"] = r.expected_identity;
          out["match"] = r.match();
          out["details"] = gf::suite_json(r).at("details").dump();
          return out;
        },
        py::arg("suite"), py::arg("model"), py::arg("seed") = 7, py::arg("step") = 1e-3);

  m.def("octonion_multiply", [](const std::vector<double>& u, const std::vector<double>& v) {
    const gf::Octonion a = gf::Octonion::from_vec(to_vec(u));
    const gf::Octonion b = gf::Octonion::from_vec(to_vec(v));
    return from_vec(gf::oct_to_vec(a * b));
  });
  m.def("quaternion_multiply", [](const std::vector<double>& u, const std::vector<double>& v) {
    const gf::Quaternion a = gf::Quaternion::from_vec(to_vec(u));
    const gf::Quaternion b = gf::Quaternion::from_vec(to_vec(v));
    return from_vec(gf::quat_to_vec(a * b));
  });
}
