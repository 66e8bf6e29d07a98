// Command-line front end: model registry, geodesic runs, verification
// suites, convergence studies.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>

#include "geoflow/io.hpp"
#include "geoflow/models.hpp"
#include "geoflow/verify.hpp"
#include "geoflow/version.hpp"

namespace gf = geoflow;
using nlohmann::json;

namespace {

std::vector<double> parse_floats(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

gf::Integrator parse_integrator(const std::string& name) {
  if (name == "rk4") return gf::Integrator::RK4;
  if (name == "rk45") return gf::Integrator::RK45Adaptive;
  if (name == "midpoint") return gf::Integrator::ImplicitMidpoint;
  throw CLI::ValidationError("--integrator", "expected rk4, rk45 or midpoint");
}

struct CommonOpts {
  std::string model = "heisenberg";
  std::string ham = "h";
  std::string p_csv, v_csv, x_csv;
  double t = 1.0;
  std::string t_grid_csv = "0.1,0.25,0.5,0.75,1.0";
  double step = 1e-3;
  std::string integrator = "rk4";
  std::uint64_t seed = 7;
  std::string out_dir;
  bool as_json = false;
  double tol_energy = 1e-8;
  double tol_foliation = 1e-7;
  double tol_pass = 1e-6;
  double tol_fail = 1e-3;

  std::string resolved_out() const {
    if (!out_dir.empty()) return out_dir;
    if (const char* env = std::getenv("GEOFLOW_OUT")) return env;
    return "out";
  }

  json config_json(const std::string& command) const {
    return json{{"command", command},
                {"model", model},
                {"hamiltonian", ham},
                {"p", p_csv},
                {"v", v_csv},
                {"x", x_csv},
                {"t", t},
                {"t_grid", t_grid_csv},
                {"step", step},
                {"integrator", integrator},
                {"seed", seed},
                {"out", resolved_out()},
                {"tol_energy", tol_energy},
                {"tol_foliation", tol_foliation},
                {"tol_pass", tol_pass},
                {"tol_fail", tol_fail},
                {"library_version", gf::kVersion}};
  }

  gf::VerifyOptions verify_options() const {
    gf::VerifyOptions opt;
    opt.seed = seed;
    opt.flow.step = step;
    opt.flow.integrator = parse_integrator(integrator);
    opt.tol.energy = tol_energy;
    opt.tol.foliation = tol_foliation;
    opt.pass_tol = tol_pass;
    opt.fail_floor = tol_fail;
    opt.t_grid = parse_floats(t_grid_csv);
    return opt;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--model", o.model, "model name (see `list`)");
  cmd->add_option("--hamiltonian", o.ham, "h, v or g");
  cmd->add_option("--p", o.p_csv, "initial covector, comma separated");
  cmd->add_option("--v", o.v_csv, "initial tangent vector, comma separated");
  cmd->add_option("--x", o.x_csv, "initial chart point, comma separated (default origin)");
  cmd->add_option("--t", o.t, "time horizon");
  cmd->add_option("--t-grid", o.t_grid_csv, "comparison times, comma separated");
  cmd->add_option("--step", o.step, "integrator step");
  cmd->add_option("--integrator", o.integrator, "rk4, rk45 or midpoint");
  cmd->add_option("--seed", o.seed, "random seed for sampled states");
  cmd->add_option("--out", o.out_dir, "output directory (default $GEOFLOW_OUT or ./out)");
  cmd->add_flag("--json", o.as_json, "machine-readable stdout");
  cmd->add_option("--tol-energy", o.tol_energy, "energy drift tolerance");
  cmd->add_option("--tol-foliation", o.tol_foliation, "foliation residual tolerance");
  cmd->add_option("--tol-pass", o.tol_pass, "identity acceptance tolerance");
  cmd->add_option("--tol-fail", o.tol_fail, "identity rejection floor");
}

int cmd_list(bool as_json) {
  json out = json::array();
  for (const auto& name : gf::model_names()) {
    const auto m = gf::get_model(name, /*recheck_properties=*/false);
    const auto d = gf::describe(*m);
    out.push_back(json{{"name", d.name},
                       {"dim", d.dim},
                       {"hdim", d.hdim},
                       {"vdim", d.vdim},
                       {"charts", d.charts},
                       {"submersion", d.has_submersion},
                       {"declared",
                        json{{"v_integrable", d.declared.v_integrable},
                             {"totally_geodesic", d.declared.totally_geodesic},
                             {"riemannian_foliation", d.declared.riemannian_foliation},
                             {"principal_bundle", d.declared.principal_bundle}}}});
  }
  if (as_json) {
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  for (const auto& d : out) {
    std::cout << d["name"].get<std::string>() << "  dim=" << d["dim"] << " (H " << d["hdim"]
              << " + V " << d["vdim"] << ")  charts=" << d["charts"] << "  declared:";
    for (const auto& [k, v] : d["declared"].items())
      if (v.get<bool>()) std::cout << " " << k;
    std::cout << "\n";
  }
  return 0;
}

int cmd_geodesic(const CommonOpts& o) {
  const auto model = gf::get_model(o.model);
  gf::Ham which = gf::Ham::Horizontal;
  if (o.ham == "v") which = gf::Ham::Vertical;
  else if (o.ham == "g") which = gf::Ham::Full;
  else if (o.ham != "h") throw CLI::ValidationError("--hamiltonian", "expected h, v or g");

  gf::Vec x = gf::Vec::Zero(model->dim);
  if (!o.x_csv.empty()) {
    const auto vals = parse_floats(o.x_csv);
    for (int i = 0; i < model->dim; ++i) x[i] = vals.at(static_cast<size_t>(i));
  }
  gf::Vec p = gf::Vec::Zero(model->dim);
  if (!o.p_csv.empty()) {
    const auto vals = parse_floats(o.p_csv);
    for (int i = 0; i < model->dim; ++i) p[i] = vals.at(static_cast<size_t>(i));
  } else if (!o.v_csv.empty()) {
    const auto vals = parse_floats(o.v_csv);
    gf::Vec v(model->dim);
    for (int i = 0; i < model->dim; ++i) v[i] = vals.at(static_cast<size_t>(i));
    p = gf::metric_at(*model, gf::Point{0, x}) * v;
  } else {
    p[0] = 1.0;
  }

  gf::FlowConfig cfg;
  cfg.step = o.step;
  cfg.integrator = parse_integrator(o.integrator);
  const gf::Trajectory traj =
      gf::flow(*model, which, gf::PhaseState{gf::Point{0, x}, p, 0.0}, o.t, cfg);

  const std::string base = o.resolved_out() + "/" + o.model + "_" + o.ham + "_geodesic";
  gf::write_text_atomic(base + ".csv", gf::trajectory_csv(*model, traj));
  json summary{{"config", o.config_json("geodesic")},
               {"energy_drift", traj.max_energy_drift},
               {"chart_switches", traj.switches.size()},
               {"samples", traj.size()},
               {"csv", base + ".csv"}};
  gf::write_text_atomic(base + ".json", summary.dump(2) + "\n");
  std::cout << (o.as_json ? summary.dump(2)
                          : "wrote " + base + ".csv (energy drift " +
                                gf::format_double(traj.max_energy_drift) + ")")
            << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, const CommonOpts& o) {
  const auto model = gf::get_model(o.model);
  const gf::VerifyOptions opt = o.verify_options();

  std::vector<std::string> suites;
  if (suite == "all") {
    suites = gf::suites_for(*model);
  } else {
    suites.push_back(suite);
  }

  json results = json::array();
  bool all_match = true;
  for (const auto& s : suites) {
    const gf::SuiteResult r = gf::run_suite(s, *model, opt);
    results.push_back(gf::suite_json(r));
    if (!r.match()) all_match = false;
    std::cout << (r.match() ? "[ ok ] " : "[FAIL] ") << o.model << " " << s
              << (r.identity_holds ? " identity holds"
                                   : (r.applicable ? " identity violated as declared"
                                                   : " not applicable"))
              << (r.match() ? "" : "  <- verdict mismatch") << "\n";
  }

  json report{{"config", o.config_json("verify")},
              {"suite", suite},
              {"results", results},
              {"all_match", all_match}};
  const std::string path = o.resolved_out() + "/verify_" + o.model + "_" + suite + ".json";
  gf::write_text_atomic(path, report.dump(2) + "\n");
  if (o.as_json) std::cout << report.dump(2) << "\n";
  return all_match ? 0 : 1;
}

int cmd_convergence(const std::string& suite, const std::string& steps_csv, const CommonOpts& o) {
  const auto steps = parse_floats(steps_csv);
  if (steps.size() < 3) {
    std::cerr << "error: convergence study needs at least 3 steps\n";
    return 2;
  }
  const auto model = gf::get_model(o.model);
  const gf::VerifyOptions opt = o.verify_options();

  gf::Vec p;
  if (!o.p_csv.empty()) {
    const auto vals = parse_floats(o.p_csv);
    p = gf::Vec::Zero(model->dim);
    for (int i = 0; i < model->dim; ++i) p[i] = vals.at(static_cast<size_t>(i));
  } else {
    p = gf::seeded_covectors(*model, o.seed, 1).front();
  }
  const gf::Point x0{0, gf::Vec::Zero(model->dim)};

  std::vector<double> residuals;
  for (double h : steps) {
    gf::FlowConfig cfg = opt.flow;
    cfg.step = h;
    double r = 0.0;
    if (suite == "factorization") {
      const auto rep = gf::factorization_check(*model, x0, p, {o.t}, cfg);
      r = rep.primary.back();
    } else if (suite == "commute") {
      const auto res = gf::flow_commutation_residual(
          *model, gf::Ham::Horizontal, gf::Ham::Full, gf::PhaseState{x0, p, 0.0}, o.t, o.t, cfg);
      r = res.base_distance + res.covector_distance;
    } else if (suite == "projection") {
      const auto rep = gf::projection_agreement(*model, x0, p, {o.t}, cfg);
      r = rep.sup_base_distance;
    } else {
      std::cerr << "error: convergence supports factorization, commute, projection\n";
      return 2;
    }
    residuals.push_back(r);
  }
  const double order = gf::fit_convergence_order(steps, residuals);
  const bool plateau = std::abs(order) <= 0.5;
  const std::string verdict =
      plateau ? "non-vanishing limit" : "converging at fitted order " + gf::format_double(order);

  std::cout << "step            residual\n";
  for (size_t i = 0; i < steps.size(); ++i)
    printf("%-15.6g %.12g\n", steps[i], residuals[i]);
  std::cout << "fitted order: " << order << "  (" << verdict << ")\n";

  json report{{"config", o.config_json("convergence")}, {"suite", suite},
              {"steps", steps},       {"residuals", residuals},
              {"fitted_order", order}, {"verdict", verdict}};
  const std::string path =
      o.resolved_out() + "/convergence_" + o.model + "_" + suite + ".json";
  gf::write_text_atomic(path, report.dump(2) + "\n");
  if (o.as_json) std::cout << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesic flows on sub-Riemannian model spaces"};
  app.require_subcommand(1);
  app.set_config("--config");

  bool list_json = false;
  CLI::App* list = app.add_subcommand("list", "list available models");
  list->add_flag("--json", list_json, "machine-readable output");

  CommonOpts geo_opts;
  CLI::App* geodesic = app.add_subcommand("geodesic", "integrate a geodesic and export it");
  add_common(geodesic, geo_opts);

  CommonOpts verify_opts;
  std::string verify_suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("suite", verify_suite,
                     "commute|factorization|projection|foliation|gauge|lcpb|all");
  add_common(verify, verify_opts);

  CommonOpts conv_opts;
  std::string conv_suite = "factorization";
  std::string conv_steps = "4e-3,2e-3,1e-3";
  CLI::App* conv = app.add_subcommand("convergence", "residuals under step refinement");
  conv->add_option("suite", conv_suite, "factorization|commute|projection");
  conv->add_option("--steps", conv_steps, "step ladder, comma separated");
  add_common(conv, conv_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) return cmd_list(list_json);
    if (geodesic->parsed()) return cmd_geodesic(geo_opts);
    if (verify->parsed()) return cmd_verify(verify_suite, verify_opts);
    if (conv->parsed()) return cmd_convergence(conv_suite, conv_steps, conv_opts);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const geoflow::GeoflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
