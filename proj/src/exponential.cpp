#include "geoflow/exponential.hpp"

#include <cmath>

#include "geoflow/errors.hpp"

namespace geoflow {

Point exp_sr(const ModelSpace& model, const Point& x, const Vec& p, double t,
             const FlowConfig& cfg) {
  if (t == 0.0) return x;
  FlowConfig quiet = cfg;
  quiet.record_stride = std::numeric_limits<int>::max();
  const PhaseState start{x, p, 0.0};
  return flow(model, Ham::Horizontal, start, t, quiet).final_state().x;
}

GeodesicResult exp_r(const ModelSpace& model, const Point& x, const Vec& v, double t,
                     const FlowConfig& cfg, bool record_dense) {
  GeodesicResult out;
  if (t == 0.0) {
    out.endpoint = x;
    out.transport = Mat::Identity(model.dim, model.dim);
    return out;
  }
  FlowConfig c = cfg;
  c.transport_basis = true;
  c.record_stride = record_dense ? 1 : std::numeric_limits<int>::max();
  const Vec p = metric_at(model, x) * v;
  out.trajectory = flow(model, Ham::Full, PhaseState{x, p, 0.0}, t, c);
  out.endpoint = out.trajectory.x.back();
  out.transport = out.trajectory.basis.back();
  return out;
}

FactorizationReport factorization_check(const ModelSpace& model, const Point& x, const Vec& p,
                                        const std::vector<double>& t_grid, const FlowConfig& cfg,
                                        const std::vector<double>& ladder) {
  if (!model.declared.v_integrable)
    throw FoliationNotDeclared(model.name + ": factorization requires an integrable vertical bundle");

  auto residuals_at = [&](double t, const FlowConfig& c) -> std::pair<double, double> {
    const Point sr = exp_sr(model, x, p, t, c);
    const Vec sharp_p = solve_linear(metric_at(model, x), p);

    // Riemannian leg from x along sharp p, transporting sharp p.
    const GeodesicResult leg1 = exp_r(model, x, sharp_p, t, c);
    const Vec w = leg1.transport * sharp_p;
    const Mat ph1 = projector_h(model, leg1.endpoint);
    const Vec v2 = -t * (w - ph1 * w);
    const Point primary_end = exp_r(model, leg1.endpoint, v2, 1.0, c).endpoint;

    // Swapped form: vertical leg first, then the transported full vector.
    const Mat ph0 = projector_h(model, x);
    const Vec vert = sharp_p - ph0 * sharp_p;
    const GeodesicResult leg2 = exp_r(model, x, Vec(-vert), t, c);
    const Vec w2 = leg2.transport * sharp_p;
    const Point alternate_end = exp_r(model, leg2.endpoint, w2, t, c).endpoint;

    return {model.distance(sr, primary_end), model.distance(sr, alternate_end)};
  };

  FactorizationReport rep;
  rep.t_grid = t_grid;
  for (double t : t_grid) {
    auto [prim, alt] = residuals_at(t, cfg);
    rep.primary.push_back(prim);
    rep.alternate.push_back(alt);
  }

  if (!ladder.empty() && !t_grid.empty()) {
    const double t_final = t_grid.back();
    for (double h : ladder) {
      FlowConfig c = cfg;
      c.step = h;
      auto [prim, alt] = residuals_at(t_final, c);
      rep.ladder_steps.push_back(h);
      rep.ladder_primary.push_back(prim);
      rep.ladder_alternate.push_back(alt);
    }
    rep.fitted_order_primary = fit_convergence_order(rep.ladder_steps, rep.ladder_primary);
    rep.fitted_order_alternate = fit_convergence_order(rep.ladder_steps, rep.ladder_alternate);
  }
  return rep;
}

std::vector<Point> horizontal_lift(const ModelSpace& model,
                                   const std::vector<BaseCurveSample>& base_curve,
                                   const Point& x0) {
  if (!model.has_submersion())
    throw SubmersionNotDeclared(model.name + ": horizontal lift needs a submersion");
  if (base_curve.size() < 3 || base_curve.size() % 2 == 0)
    throw LiftDiverged("horizontal_lift: need an odd number >= 3 of uniform samples");

  const auto& base = *model.base;
  if (base.distance(model.project_to_base(x0), base_curve.front().x) > 1e-6)
    throw LiftDiverged("horizontal_lift: start point does not project to the curve start");

  // Velocity of the lift at chart point y given a base sample.
  auto lift_velocity = [&](const Point& y, const BaseCurveSample& bs) -> Vec {
    const Point by = model.project_to_base(y);
    // Base velocity expressed in the chart the projection of y uses.
    Vec vb = bs.velocity;
    if (bs.x.chart != by.chart) {
      const TangentVec moved = push_tangent(base.atlas, TangentVec{bs.x, bs.velocity}, by.chart);
      vb = moved.components;
    }
    const Mat dpi = jacobian(model.pi_chart[static_cast<size_t>(y.chart)]
                                            [static_cast<size_t>(by.chart)],
                             y.x);
    const Mat a = model.charts[static_cast<size_t>(y.chart)].hframe(y.x);
    const Mat m = dpi * a;  // base-dim x hdim, square for a submersion lift
    const Vec coeffs = solve_linear(Mat(m), vb);
    return a * coeffs;
  };

  std::vector<Point> out;
  out.reserve(base_curve.size());
  Point y = x0;
  out.push_back(y);
  int switches = 0;
  for (size_t i = 0; i + 2 < base_curve.size(); i += 2) {
    const double h = base_curve[i + 2].t - base_curve[i].t;
    const Vec k1 = lift_velocity(y, base_curve[i]);
    const Vec k2 = lift_velocity(Point{y.chart, y.x + 0.5 * h * k1}, base_curve[i + 1]);
    const Vec k3 = lift_velocity(Point{y.chart, y.x + 0.5 * h * k2}, base_curve[i + 1]);
    const Vec k4 = lift_velocity(Point{y.chart, y.x + h * k3}, base_curve[i + 2]);
    y.x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.x.allFinite()) throw LiftDiverged("horizontal_lift: non-finite coordinates");
    // Chart switch when the lift wanders too far out.
    const Chart& ch = model.atlas.chart(y.chart);
    if (ch.wants_switch(y.x) && !ch.transitions.empty()) {
      if (++switches > 256) throw ChartExhausted("horizontal_lift: too many chart switches");
      const Transition& tr = ch.transitions.front();
      y = Point{tr.target, tr.forward(y.x)};
    }
    if (!model.atlas.chart(y.chart).in_domain(y.x))
      throw OutOfChart("horizontal_lift: left the chart safe region");
    out.push_back(y);
  }
  return out;
}

ProjectionAgreementReport projection_agreement(const ModelSpace& model, const Point& x,
                                               const Vec& p, const std::vector<double>& t_grid,
                                               const FlowConfig& cfg) {
  if (!model.has_submersion())
    throw SubmersionNotDeclared(model.name + ": projection agreement needs a submersion");
  const auto& base = *model.base;
  const double t_final = t_grid.back();

  FlowConfig dense = cfg;
  dense.record_stride = 1;
  const Trajectory traj_sr = flow(model, Ham::Horizontal, PhaseState{x, p, 0.0}, t_final, dense);
  const Vec sharp_p = solve_linear(metric_at(model, x), p);
  const GeodesicResult riem = exp_r(model, x, sharp_p, t_final, cfg, /*record_dense=*/true);
  const Trajectory& traj_r = riem.trajectory;

  auto state_at_time = [](const Trajectory& tr, double t) -> size_t {
    const double h = tr.step_used;
    const auto idx = static_cast<size_t>(std::lround(t / h));
    return std::min(idx, tr.size() - 1);
  };

  ProjectionAgreementReport rep;
  rep.t_grid = t_grid;
  for (double t : t_grid) {
    const Point a = model.project_to_base(traj_sr.x[state_at_time(traj_sr, t)]);
    const Point b = model.project_to_base(traj_r.x[state_at_time(traj_r, t)]);
    const double d = base.distance(a, b);
    rep.base_distance.push_back(d);
    rep.sup_base_distance = std::max(rep.sup_base_distance, d);
  }

  // Reconstruct the sub-Riemannian geodesic as the horizontal lift of the
  // projected Riemannian geodesic.
  std::vector<BaseCurveSample> projected;
  projected.reserve(traj_r.size());
  const CometricField& sg = model.comet_g;
  for (size_t i = 0; i < traj_r.size(); ++i) {
    const Point bp = model.project_to_base(traj_r.x[i]);
    const Mat dpi = jacobian(model.pi_chart[static_cast<size_t>(traj_r.x[i].chart)]
                                           [static_cast<size_t>(bp.chart)],
                             traj_r.x[i].x);
    const Vec vel = sg.at(traj_r.x[i].chart)(traj_r.x[i].x) * traj_r.p[i];
    projected.push_back(BaseCurveSample{traj_r.t[i], bp, dpi * vel});
  }
  if (projected.size() % 2 == 0) projected.pop_back();
  const std::vector<Point> lift = horizontal_lift(model, projected, x);
  for (double t : t_grid) {
    const size_t i_sr = state_at_time(traj_sr, t);
    const size_t i_lift = std::min(state_at_time(traj_r, t) / 2, lift.size() - 1);
    rep.lift_reconstruction = std::max(
        rep.lift_reconstruction, model.distance(traj_sr.x[i_sr], lift[i_lift]));
  }
  return rep;
}

double fit_convergence_order(const std::vector<double>& steps,
                             const std::vector<double>& residuals) {
  const size_t n = steps.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double lx = std::log(steps[i]);
    const double ly = std::log(std::max(residuals[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

}  // namespace geoflow
