#include "geoflow/bundle.hpp"

#include "geoflow/errors.hpp"

namespace geoflow {

VecMap lifted_base_field(const ModelSpace& model, int chart, int base_chart,
                         const VecMap& base_field) {
  const auto& cg = model.charts[static_cast<size_t>(chart)];
  const auto pi_cb = model.pi_chart[static_cast<size_t>(chart)][static_cast<size_t>(base_chart)];
  const auto dpi = model.dpi_ambient;
  const auto bjac = model.base->charts[static_cast<size_t>(base_chart)].ambient_jacobian;
  const auto to_amb = cg.to_ambient;
  const auto mjac = cg.ambient_jacobian;
  const auto hframe = cg.hframe;
  return VecMap([=](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    using T = typename V::Scalar;
    const V beta = pi_cb(x);
    const V vb = base_field(beta);
    const MatOf<T> a = hframe(x);
    const MatOf<T> jm = mjac(x);
    const V p = to_amb(x);
    const MatOf<T> jb = bjac(beta);
    const MatOf<T> gram = jb.transpose() * jb;
    MatOf<T> m(vb.size(), a.cols());
    for (int i = 0; i < a.cols(); ++i) {
      const V w = dpi(p, V(jm * a.col(i)));
      m.col(i) = solve_linear(gram, VecOf<T>(jb.transpose() * w));
    }
    const V coeffs = solve_linear(m, vb);
    return V(a * coeffs);
  });
}

GaugeReport gauge_formula_check(const ModelSpace& model, const Point& x, const Vec& p,
                                const std::vector<double>& t_grid, const FlowConfig& cfg) {
  if (!model.bundle) throw NotPrincipalBundle(model.name + ": no principal bundle structure");
  const BundleData& bd = *model.bundle;
  const double t_final = t_grid.back();

  const Vec sharp_p = solve_linear(metric_at(model, x), p);
  const double omega0 = bd.omega_chart[static_cast<size_t>(x.chart)](x.x, sharp_p)[0];

  FlowConfig dense = cfg;
  dense.record_stride = 1;
  const Trajectory traj_sr = flow(model, Ham::Horizontal, PhaseState{x, p, 0.0}, t_final, dense);
  const Trajectory traj_r =
      flow(model, Ham::Full, PhaseState{x, metric_at(model, x) * sharp_p, 0.0}, t_final, dense);

  GaugeReport rep;
  rep.t_grid = t_grid;

  // Observation: omega(gamma') is constant along Riemannian geodesics.
  const CometricField& sg = model.comet_g;
  for (size_t i = 0; i < traj_r.size(); ++i) {
    const Point& q = traj_r.x[i];
    const Vec vel = sg.at(q.chart)(q.x) * traj_r.p[i];
    const double w = bd.omega_chart[static_cast<size_t>(q.chart)](q.x, vel)[0];
    rep.omega_deviation = std::max(rep.omega_deviation, std::abs(w - omega0));
  }

  auto at_time = [](const Trajectory& tr, double t) -> size_t {
    return std::min(static_cast<size_t>(std::lround(t / tr.step_used)), tr.size() - 1);
  };
  for (double t : t_grid) {
    const Point lhs = traj_sr.x[at_time(traj_sr, t)];
    const Point rend = traj_r.x[at_time(traj_r, t)];
    const Vec acted = bd.act_ambient(model.to_ambient(rend), -t * omega0);
    const double d = (model.to_ambient(lhs) - acted).norm();
    rep.residual.push_back(d);
    rep.sup_residual = std::max(rep.sup_residual, d);
  }

  // Pure-fiber geodesics move by the group exponential.
  const Vec fiber_dir = model.charts[static_cast<size_t>(x.chart)].vframe(x.x).col(0);
  const double omega_f = bd.omega_chart[static_cast<size_t>(x.chart)](x.x, fiber_dir)[0];
  for (double t : t_grid) {
    const Point end = exp_r(model, x, fiber_dir, t, cfg).endpoint;
    const Vec acted = bd.act_ambient(model.to_ambient(x), t * omega_f);
    rep.fiber_geodesic_residual =
        std::max(rep.fiber_geodesic_residual, (model.to_ambient(end) - acted).norm());
  }
  return rep;
}

LcpbReport lcpb_relations_check(const ModelSpace& model, const std::vector<Point>& samples) {
  if (!model.bundle) throw NotPrincipalBundle(model.name + ": no principal bundle structure");
  if (!model.has_submersion())
    throw SubmersionNotDeclared(model.name + ": relations need the base space");

  const Connection lc = levi_civita(model);
  const Connection lc_base = levi_civita(*model.base);

  LcpbReport rep;
  rep.samples = static_cast<int>(samples.size());
  const int bdim = model.base->dim;

  for (const Point& at : samples) {
    const Point bp = model.project_to_base(at);
    std::vector<VecMap> lifts;
    for (int i = 0; i < bdim; ++i)
      lifts.push_back(
          lifted_base_field(model, at.chart, bp.chart, VecMap::constant(Vec::Unit(bdim, i))));
    const VecMap xi = frame_field(model, at.chart, /*horizontal=*/false, 0);

    const Mat g = metric_at(model, at);
    const Mat ginv = model.charts[static_cast<size_t>(at.chart)].g_inv(at.x);
    const Vec xi_val = xi(at.x);

    // sharp g(xi, R(hX, .)) assembled column by column.
    auto sharp_curv_row = [&](const Vec& hx_val) -> Vec {
      Vec w(model.dim);
      for (int i = 0; i < model.dim; ++i) {
        const Vec r = curvature(model, at, hx_val, Vec::Unit(model.dim, i)).components;
        w[i] = xi_val.dot(g * r);
      }
      return ginv * w;
    };

    for (int i = 0; i < bdim; ++i) {
      const Vec hx_val = lifts[static_cast<size_t>(i)](at.x);
      for (int j = 0; j < bdim; ++j) {
        // Horizontal relation.
        const Vec lhs =
            covderiv(model, lc, lifts[static_cast<size_t>(i)], lifts[static_cast<size_t>(j)], at)
                .components;
        const Vec base_cd = covderiv(*model.base, lc_base, VecMap::constant(Vec::Unit(bdim, i)),
                                     VecMap::constant(Vec::Unit(bdim, j)), bp)
                                .components;
        const VecMap lifted_cd = lifted_base_field(model, at.chart, bp.chart,
                                                   VecMap::constant(base_cd));
        const Vec hy_val = lifts[static_cast<size_t>(j)](at.x);
        const Vec rhs =
            lifted_cd(at.x) + 0.5 * curvature(model, at, hx_val, hy_val).components;
        rep.horizontal = std::max(rep.horizontal, (lhs - rhs).cwiseAbs().maxCoeff());
      }

      // Mixed relations.
      const Vec mixed_lhs = covderiv(model, lc, lifts[static_cast<size_t>(i)], xi, at).components;
      const Vec mixed_rhs = -0.5 * sharp_curv_row(hx_val);
      rep.mixed = std::max(rep.mixed, (mixed_lhs - mixed_rhs).cwiseAbs().maxCoeff());

      const Vec swapped_lhs =
          covderiv(model, lc, xi, lifts[static_cast<size_t>(i)], at).components;
      rep.mixed_swapped =
          std::max(rep.mixed_swapped, (swapped_lhs + mixed_rhs).cwiseAbs().maxCoeff());
    }

    // Vertical relation (abelian structure group).
    const Vec vert = covderiv(model, lc, xi, xi, at).components;
    rep.vertical = std::max(rep.vertical, vert.cwiseAbs().maxCoeff());
  }
  return rep;
}

}  // namespace geoflow
