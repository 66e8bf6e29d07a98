#include "geoflow/verify.hpp"

#include "geoflow/errors.hpp"
#include "geoflow/samplers.hpp"

namespace geoflow {

using nlohmann::json;

std::vector<PhaseState> seeded_states(const ModelSpace& model, std::uint64_t seed, int count,
                                      double p_scale) {
  std::mt19937_64 rng(seed);
  std::vector<PhaseState> states;
  states.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    Vec x(model.dim), p(model.dim);
    for (int k = 0; k < model.dim; ++k) x[k] = model.sample_radius * uniform_unit(rng);
    for (int k = 0; k < model.dim; ++k) p[k] = p_scale * uniform_unit(rng);
    states.push_back(PhaseState{Point{0, x}, p, 0.0});
  }
  return states;
}

std::vector<Vec> seeded_covectors(const ModelSpace& model, std::uint64_t seed, int count) {
  CovectorSampler sampler(seed, model.dim, model.covector_scale);
  std::vector<Vec> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

namespace {

json residual_stats(const std::vector<double>& v) {
  double sup = 0.0;
  for (double r : v) sup = std::max(sup, r);
  return json{{"sup", sup}, {"values", v}};
}

// Three-way verdict: holds / violated / inconclusive.
void classify(SuiteResult& r, double residual, double pass_tol, double fail_floor) {
  if (residual <= pass_tol) {
    r.identity_holds = true;
  } else if (residual >= fail_floor) {
    r.identity_holds = false;
  } else {
    r.inconclusive = true;
  }
}

}  // namespace

SuiteResult verify_commute(const ModelSpace& model, const VerifyOptions& opt) {
  SuiteResult r;
  r.suite = "commute";
  r.model = model.name;
  r.expected_identity =
      model.declared.totally_geodesic && model.declared.riemannian_foliation;

  double bracket_sup = 0.0;
  for (const PhaseState& s : seeded_states(model, opt.seed, opt.bracket_states, 1.5))
    bracket_sup = std::max(
        bracket_sup, std::abs(poisson_bracket(model, model.comet_h, model.comet_v, s.x, s.p)));

  double nabla_sup = 0.0;
  const auto pts = model.sample_points(opt.metric_samples);
  for (const Point& p : pts) {
    const ConnMetricSample cms = conn_metric_sample(model, adapted(model), p);
    const Mat frame = model.full_frame(p);
    for (int a = 0; a < model.dim; ++a)
      for (int b = 0; b < model.dim; ++b)
        for (int c = b; c < model.dim; ++c)
          nabla_sup = std::max(nabla_sup, std::abs(covderiv_metric_at(
                                              cms, frame.col(a), frame.col(b), frame.col(c))));
  }

  const double tol_identity = 1e-7;
  r.details = json{{"bracket_sup", bracket_sup},
                   {"nabla_hat_g_sup", nabla_sup},
                   {"states", opt.bracket_states},
                   {"metric_samples", static_cast<int>(pts.size())},
                   {"seed", opt.seed},
                   {"tolerance", tol_identity}};
  classify(r, std::max(bracket_sup, nabla_sup), tol_identity, opt.fail_floor);

  // The two halves of the equivalence must agree with each other as well.
  const bool bracket_zero = bracket_sup <= tol_identity;
  const bool nabla_zero = nabla_sup <= tol_identity;
  if (bracket_zero != nabla_zero) r.inconclusive = true;
  return r;
}

SuiteResult verify_foliation(const ModelSpace& model, const VerifyOptions& opt) {
  SuiteResult r;
  r.suite = "foliation";
  r.model = model.name;
  const auto pts = model.sample_points(std::min(opt.metric_samples, 50));
  const FoliationReport rep = foliation_diagnostics(model, pts, opt.tol);
  r.details = json{{"tg_residual", rep.tg_residual},
                   {"rf_residual", rep.rf_residual},
                   {"nabla_hat_g_residual", rep.rnabla_g_residual},
                   {"trace_residual", rep.trace_residual},
                   {"samples", rep.samples},
                   {"tolerance", rep.tol},
                   {"tg_ok", rep.tg_ok},
                   {"rf_ok", rep.rf_ok},
                   {"nabla_hat_zero", rep.rnabla_zero},
                   {"trace_ok", rep.trace_ok}};
  r.identity_holds = rep.tg_ok && rep.rf_ok;
  r.expected_identity =
      model.declared.totally_geodesic && model.declared.riemannian_foliation;
  // Individual verdicts must match their declarations too.
  if (rep.tg_ok != model.declared.totally_geodesic ||
      rep.rf_ok != model.declared.riemannian_foliation)
    r.inconclusive = true;
  return r;
}

SuiteResult verify_factorization(const ModelSpace& model, const VerifyOptions& opt) {
  SuiteResult r;
  r.suite = "factorization";
  r.model = model.name;
  r.expected_identity = model.declared.v_integrable && model.declared.totally_geodesic &&
                        model.declared.riemannian_foliation;
  if (!model.declared.v_integrable) {
    r.applicable = false;
    return r;
  }

  const bool big = model.dim > 8;
  const double pass_tol = big ? 1e-5 : opt.pass_tol;
  const int n_cov = big ? std::min(opt.covectors, 5) : opt.covectors;

  std::vector<Vec> covs;
  if (r.expected_identity) {
    covs = seeded_covectors(model, opt.seed, n_cov);
  } else {
    Vec p = Vec::Zero(model.dim);
    p[0] = 1.0;
    p[model.dim - 1] = 1.0;
    covs.push_back(p);
  }

  const Point x0 = model.interesting_points.empty() ? Point{0, Vec::Zero(model.dim)}
                                                    : model.interesting_points.front();
  std::vector<double> primary, alternate, orders_p, orders_a;
  std::vector<json> ladders;
  for (const Vec& p : covs) {
    // The order study is expensive; run it on the first covectors only.
    const bool with_ladder = !big && (&p - covs.data()) < 3;
    const FactorizationReport rep = factorization_check(
        model, x0, p, opt.t_grid, opt.flow, with_ladder ? opt.ladder : std::vector<double>{});
    primary.push_back(*std::max_element(rep.primary.begin(), rep.primary.end()));
    alternate.push_back(*std::max_element(rep.alternate.begin(), rep.alternate.end()));
    if (with_ladder) {
      orders_p.push_back(rep.fitted_order_primary);
      orders_a.push_back(rep.fitted_order_alternate);
      ladders.push_back(json{{"steps", rep.ladder_steps},
                             {"primary", rep.ladder_primary},
                             {"alternate", rep.ladder_alternate},
                             {"order_primary", rep.fitted_order_primary},
                             {"order_alternate", rep.fitted_order_alternate}});
    }
  }

  const double worst =
      std::max(*std::max_element(primary.begin(), primary.end()),
               *std::max_element(alternate.begin(), alternate.end()));
  r.details = json{{"primary", residual_stats(primary)},
                   {"alternate", residual_stats(alternate)},
                   {"covectors", n_cov},
                   {"seed", opt.seed},
                   {"step", opt.flow.step},
                   {"t_grid", opt.t_grid},
                   {"tolerance", pass_tol},
                   {"ladders", ladders}};

  classify(r, worst, pass_tol, opt.fail_floor);
  if (r.identity_holds)
    for (double o : orders_p)
      if (o < 3.5 || o > 4.5) r.inconclusive = true;
  if (!r.expected_identity && !r.identity_holds && !orders_p.empty()) {
    // Negative control must also be step-independent.
    for (double o : orders_p)
      if (std::abs(o) > 0.5) r.inconclusive = true;
  }
  return r;
}

SuiteResult verify_projection(const ModelSpace& model, const VerifyOptions& opt) {
  SuiteResult r;
  r.suite = "projection";
  r.model = model.name;
  if (!model.has_submersion()) {
    r.applicable = false;
    return r;
  }
  r.expected_identity = model.declared.totally_geodesic && model.vertical_is_orthogonal;

  std::vector<Vec> covs;
  if (r.expected_identity) {
    covs = seeded_covectors(model, opt.seed, opt.covectors);
  } else {
    Vec p = Vec::Zero(model.dim);
    p[0] = 1.0;
    p[model.dim - 1] = 1.0;
    covs.push_back(p);
  }
  const Point x0 = model.interesting_points.empty() ? Point{0, Vec::Zero(model.dim)}
                                                    : model.interesting_points.front();

  std::vector<double> agreement, lifts;
  for (const Vec& p : covs) {
    const ProjectionAgreementReport rep =
        projection_agreement(model, x0, p, opt.t_grid, opt.flow);
    agreement.push_back(rep.sup_base_distance);
    lifts.push_back(rep.lift_reconstruction);
  }
  const double worst_agreement = *std::max_element(agreement.begin(), agreement.end());
  const double worst_lift = *std::max_element(lifts.begin(), lifts.end());
  r.details = json{{"agreement", residual_stats(agreement)},
                   {"lift_reconstruction", residual_stats(lifts)},
                   {"covectors", static_cast<int>(covs.size())},
                   {"seed", opt.seed},
                   {"step", opt.flow.step},
                   {"tolerance", opt.pass_tol}};
  // The identity includes the horizontal-lift formulation.
  classify(r, std::max(worst_agreement, worst_lift), opt.pass_tol,
           std::min(opt.fail_floor, 5e-3));
  return r;
}

SuiteResult verify_gauge(const ModelSpace& model, const VerifyOptions& opt) {
  SuiteResult r;
  r.suite = "gauge";
  r.model = model.name;
  if (!model.bundle) throw NotPrincipalBundle(model.name + ": gauge suite needs a principal bundle");
  r.expected_identity = true;

  const Point x0 = model.interesting_points.empty() ? Point{0, Vec::Zero(model.dim)}
                                                    : model.interesting_points.front();
  std::vector<double> residuals, omega_dev, fiber;
  for (const Vec& p : seeded_covectors(model, opt.seed, opt.covectors)) {
    const GaugeReport rep = gauge_formula_check(model, x0, p, opt.t_grid, opt.flow);
    residuals.push_back(rep.sup_residual);
    omega_dev.push_back(rep.omega_deviation);
    fiber.push_back(rep.fiber_geodesic_residual);
  }
  const double worst = *std::max_element(residuals.begin(), residuals.end());
  const double worst_omega = *std::max_element(omega_dev.begin(), omega_dev.end());
  const double worst_fiber = *std::max_element(fiber.begin(), fiber.end());
  r.details = json{{"gauge", residual_stats(residuals)},
                   {"omega_deviation", residual_stats(omega_dev)},
                   {"fiber_geodesic", residual_stats(fiber)},
                   {"seed", opt.seed},
                   {"step", opt.flow.step},
                   {"tolerance", opt.pass_tol},
                   {"omega_tolerance", 1e-8}};
  r.identity_holds = worst <= opt.pass_tol && worst_omega <= 1e-8 && worst_fiber <= opt.pass_tol;
  return r;
}

SuiteResult verify_lcpb(const ModelSpace& model, const VerifyOptions& opt) {
  SuiteResult r;
  r.suite = "lcpb";
  r.model = model.name;
  if (!model.bundle) throw NotPrincipalBundle(model.name + ": relations need a principal bundle");
  r.expected_identity = true;
  const auto pts = model.sample_points(20);
  const LcpbReport rep = lcpb_relations_check(model, pts);
  const double worst =
      std::max(std::max(rep.horizontal, rep.vertical), std::max(rep.mixed, rep.mixed_swapped));
  r.details = json{{"horizontal", rep.horizontal},
                   {"vertical", rep.vertical},
                   {"mixed", rep.mixed},
                   {"mixed_swapped", rep.mixed_swapped},
                   {"samples", rep.samples},
                   {"tolerance", opt.pass_tol}};
  r.identity_holds = worst <= opt.pass_tol;
  return r;
}

std::vector<std::string> suites_for(const ModelSpace& model) {
  std::vector<std::string> out = {"foliation", "commute"};
  if (model.declared.v_integrable) out.push_back("factorization");
  if (model.has_submersion()) out.push_back("projection");
  if (model.bundle) {
    out.push_back("gauge");
    out.push_back("lcpb");
  }
  return out;
}

SuiteResult run_suite(const std::string& suite, const ModelSpace& model,
                      const VerifyOptions& opt) {
  if (suite == "commute") return verify_commute(model, opt);
  if (suite == "foliation") return verify_foliation(model, opt);
  if (suite == "factorization") return verify_factorization(model, opt);
  if (suite == "projection") return verify_projection(model, opt);
  if (suite == "gauge") return verify_gauge(model, opt);
  if (suite == "lcpb") return verify_lcpb(model, opt);
  throw GeoflowError("unknown suite: " + suite);
}

json suite_json(const SuiteResult& r) {
  return json{{"suite", r.suite},
              {"model", r.model},
              {"applicable", r.applicable},
              {"identity_holds", r.identity_holds},
              {"expected_identity", r.expected_identity},
              {"inconclusive", r.inconclusive},
              {"match", r.match()},
              {"details", r.details}};
}

}  // namespace geoflow
