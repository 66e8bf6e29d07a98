#include "geoflow/connection.hpp"

#include "geoflow/errors.hpp"

namespace geoflow {

Tensor3 christoffel(const ModelSpace& model, const Point& x) {
  const auto& cg = model.charts[static_cast<size_t>(x.chart)];
  const auto gp = matrix_partials(cg.g, x.x);
  const Mat ginv = cg.g_inv(x.x);
  const int n = model.dim;
  Tensor3 gamma;
  gamma.d.assign(static_cast<size_t>(n), Mat::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec lower(n);
      for (int l = 0; l < n; ++l)
        lower[l] = 0.5 * (gp.partials[i](j, l) + gp.partials[j](i, l) - gp.partials[l](i, j));
      const Vec up = ginv * lower;
      for (int k = 0; k < n; ++k) {
        gamma.d[static_cast<size_t>(k)](i, j) = up[k];
        gamma.d[static_cast<size_t>(k)](j, i) = up[k];
      }
    }
  return gamma;
}

namespace {

Tensor3 adapted_coeffs(const ModelSpace& model, const Point& x) {
  const Tensor3 lc = christoffel(model, x);
  const SplitSample s = split_projections(model, x);
  const int n = model.dim;

  // Directional projector derivatives along every projected basis vector.
  std::vector<Mat> mh_h(static_cast<size_t>(n)), mh_v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    mh_h[static_cast<size_t>(i)] = s.dph.contract(s.ph.col(i));
    mh_v[static_cast<size_t>(i)] = s.dph.contract(s.pv.col(i));
  }

  Tensor3 out;
  out.d.assign(static_cast<size_t>(n), Mat::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    const Vec hp_i = s.ph.col(i);
    const Vec vp_i = s.pv.col(i);
    for (int j = 0; j < n; ++j) {
      const Vec hp_j = s.ph.col(j);
      const Vec vp_j = s.pv.col(j);
      const Vec e_j = Vec::Unit(n, j);
      const Vec e_i = Vec::Unit(n, i);
      const Vec t1 = s.ph * (mh_h[static_cast<size_t>(i)] * e_j + contract_gamma(lc, hp_i, hp_j));
      const Vec t2 = s.pv * (-mh_v[static_cast<size_t>(i)] * e_j + contract_gamma(lc, vp_i, vp_j));
      const Vec t3 = s.ph * (mh_v[static_cast<size_t>(i)] * e_j + mh_h[static_cast<size_t>(j)] * e_i);
      const Vec t4 = s.pv * (-mh_h[static_cast<size_t>(i)] * e_j - mh_v[static_cast<size_t>(j)] * e_i);
      const Vec total = t1 + t2 + t3 + t4;
      for (int k = 0; k < n; ++k) out.d[static_cast<size_t>(k)](i, j) = total[k];
    }
  }
  return out;
}

}  // namespace

Tensor3 Connection::coeffs(const Point& x) const {
  return kind == ConnKind::LeviCivita ? christoffel(*model, x) : adapted_coeffs(*model, x);
}

Connection levi_civita(const ModelSpace& model) { return Connection{ConnKind::LeviCivita, &model}; }
Connection adapted(const ModelSpace& model) { return Connection{ConnKind::Adapted, &model}; }

Vec contract_gamma(const Tensor3& gamma, const Vec& u, const Vec& v) {
  const int n = gamma.size();
  Vec out(n);
  for (int k = 0; k < n; ++k) out[k] = u.dot(gamma[k] * v);
  return out;
}

TangentVec covderiv(const ModelSpace& model, const Connection& conn, const VecMap& x_field,
                    const VecMap& y_field, const Point& at) {
  const auto yj = vec_with_jacobian(y_field, at.x);
  const Vec xv = x_field(at.x);
  const Tensor3 gamma = conn.coeffs(at);
  return TangentVec{at, yj.jacobian * xv + contract_gamma(gamma, xv, yj.value)};
}

TangentVec adapted_torsion(const ModelSpace& model, const Point& at, const Vec& v, const Vec& w) {
  // Constant-component extensions commute, so the torsion reduces to the
  // antisymmetric part of the coefficients.
  const Tensor3 gamma = adapted(model).coeffs(at);
  return TangentVec{at, contract_gamma(gamma, v, w) - contract_gamma(gamma, w, v)};
}

ConnMetricSample conn_metric_sample(const ModelSpace& model, const Connection& conn,
                                    const Point& at) {
  const auto& cg = model.charts[static_cast<size_t>(at.chart)];
  auto gp = matrix_partials(cg.g, at.x);
  return ConnMetricSample{gp.value, std::move(gp.partials), conn.coeffs(at)};
}

double covderiv_metric_at(const ConnMetricSample& s, const Vec& v, const Vec& w1, const Vec& w2) {
  const double dir = w1.dot(s.dg.contract(v) * w2);
  const Vec dv_w1 = contract_gamma(s.gamma, v, w1);
  const Vec dv_w2 = contract_gamma(s.gamma, v, w2);
  return dir - dv_w1.dot(s.g * w2) - w1.dot(s.g * dv_w2);
}

double covderiv_metric(const ModelSpace& model, const Connection& conn, const Vec& v, const Vec& w1,
                       const Vec& w2, const Point& at) {
  return covderiv_metric_at(conn_metric_sample(model, conn, at), v, w1, w2);
}

TangentVec second_fundamental_form(const ModelSpace& model, const Vec& z1, const Vec& z2,
                                   const Point& at) {
  const SplitSample s = split_projections(model, at);
  const Tensor3 lc = christoffel(model, at);
  const Vec u = s.pv * z1;
  // Field x -> P_V(x) z2 differentiated along u, plus the Levi-Civita term.
  const Vec deriv = -(s.dph.contract(u)) * z2;
  const Vec nab = deriv + contract_gamma(lc, u, Vec(s.pv * z2));
  return TangentVec{at, s.ph * nab};
}

std::vector<TangentVec> parallel_transport(const ModelSpace& model, const Connection& conn,
                                           const std::vector<CurveSample>& curve, const Vec& v0) {
  if (curve.size() < 3 || curve.size() % 2 == 0)
    throw TransportDiverged("parallel_transport: need an odd number >= 3 of uniform samples");
  std::vector<TangentVec> out;
  out.reserve(curve.size());
  Vec v = v0;
  out.push_back(TangentVec{curve[0].x, v});

  auto rhs = [&](const Point& x, const Vec& xdot, const Vec& vv) -> Vec {
    return -contract_gamma(conn.coeffs(x), xdot, vv);
  };

  for (size_t i = 0; i + 2 < curve.size(); i += 2) {
    CurveSample a = curve[i], m = curve[i + 1], b = curve[i + 2];
    // Work in the chart of the middle sample; push neighbors if needed.
    const int ch = m.x.chart;
    auto align = [&](CurveSample& cs) {
      if (cs.x.chart != ch) {
        const TangentVec moved = push_tangent(model.atlas, TangentVec{cs.x, cs.velocity}, ch);
        cs.x = moved.base;
        cs.velocity = moved.components;
      }
    };
    if (a.x.chart != ch) {
      const TangentVec vv = push_tangent(model.atlas, TangentVec{a.x, v}, ch);
      v = vv.components;
    }
    align(a);
    align(b);
    const double h = b.t - a.t;
    const Vec k1 = rhs(a.x, a.velocity, v);
    const Vec k2 = rhs(m.x, m.velocity, Vec(v + 0.5 * h * k1));
    const Vec k3 = rhs(m.x, m.velocity, Vec(v + 0.5 * h * k2));
    const Vec k4 = rhs(b.x, b.velocity, Vec(v + h * k3));
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!v.allFinite()) throw TransportDiverged("parallel_transport: non-finite components");
    // Express in the chart the endpoint sample uses.
    Vec v_out = v;
    if (curve[i + 2].x.chart != ch) {
      const TangentVec moved = push_tangent(model.atlas, TangentVec{b.x, v}, curve[i + 2].x.chart);
      v_out = moved.components;
      v = v_out;
    }
    out.push_back(TangentVec{curve[i + 2].x, v_out});
  }
  return out;
}

double mixed_bracket_trace(const ModelSpace& model, const Point& at, const VecMap& y_field) {
  const int n = model.dim;
  // Matrix field whose i-th column is pr_V [pr_H Y, pr_H e_i] at x.
  auto inner = [&](const Vec& x) -> Mat {
    const Point p{at.chart, x};
    const SplitSample s = split_projections(model, p);
    VecMap phy([proj = model.proj_h[static_cast<size_t>(at.chart)], y_field](const auto& xx) {
      using V = std::decay_t<decltype(y_field(xx))>;
      return V(proj(xx) * y_field(xx));
    });
    const auto phy_j = vec_with_jacobian(phy, x);
    const Mat b = s.dph.contract(phy_j.value) - phy_j.jacobian * s.ph;
    return Mat(s.pv * b);
  };

  const SplitSample s0 = split_projections(model, at);
  const Vec zy = s0.pv * y_field(at.x);
  const Mat c0 = inner(at.x);

  // Directional derivative of the matrix field along pr_V Y.
  const double h = fd_step(at.x.cwiseAbs().maxCoeff());
  const Mat cp = inner(Vec(at.x + h * zy));
  const Mat cm = inner(Vec(at.x - h * zy));
  const Mat dc = (cp - cm) / (2.0 * h);

  // Jacobian of the field x -> P_V(x) Y(x).
  VecMap pvy([proj = model.proj_h[static_cast<size_t>(at.chart)], y_field](const auto& xx) {
    auto yv = y_field(xx);
    using V = std::decay_t<decltype(yv)>;
    return V(yv - proj(xx) * yv);
  });
  const Mat j_pvy = vec_with_jacobian(pvy, at.x).jacobian;

  // trace over X of pr_H ( d_{prV Y} C - J_{prV Y} C ).
  const Mat outer = s0.ph * (dc - j_pvy * c0);
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += outer(i, i);
  return tr;
}

FoliationReport foliation_diagnostics(const ModelSpace& model, const std::vector<Point>& samples,
                                      const Tolerances& tol) {
  FoliationReport rep;
  rep.samples = static_cast<int>(samples.size());
  rep.tol = tol.foliation;

  for (const Point& p : samples) {
    const auto& cg = model.charts[static_cast<size_t>(p.chart)];
    const auto hp = matrix_partials(cg.hframe, p.x);
    const auto vp = matrix_partials(cg.vframe, p.x);
    const auto gp = matrix_partials(cg.g, p.x);
    const int n = model.dim;

    // (L_X g)(Z, W) assembled from frame and metric partials.
    auto lie_g = [&](const MatWithPartials& xf, int a, const MatWithPartials& zf, int b,
                     const MatWithPartials& wf, int c) -> double {
      const Vec xv = xf.value.col(a);
      const Vec zv = zf.value.col(b);
      const Vec wv = wf.value.col(c);
      double dir = 0.0;
      Vec br_xz = Vec::Zero(n), br_xw = Vec::Zero(n);
      for (int k = 0; k < n; ++k) {
        const Vec dz = zf.partials[k].col(b);
        const Vec dw = wf.partials[k].col(c);
        dir += xv[k] * (dz.dot(gp.value * wv) + zv.dot(gp.partials[k] * wv) +
                        zv.dot(gp.value * dw));
        br_xz += xv[k] * dz - zv[k] * xf.partials[k].col(a);
        br_xw += xv[k] * dw - wv[k] * xf.partials[k].col(a);
      }
      return dir - br_xz.dot(gp.value * wv) - zv.dot(gp.value * br_xw);
    };

    for (int a = 0; a < model.hdim; ++a)
      for (int b = 0; b < model.vdim; ++b)
        for (int c = b; c < model.vdim; ++c)
          rep.tg_residual = std::max(rep.tg_residual, std::abs(lie_g(hp, a, vp, b, vp, c)));
    for (int b = 0; b < model.vdim; ++b)
      for (int a = 0; a < model.hdim; ++a)
        for (int c = a; c < model.hdim; ++c)
          rep.rf_residual = std::max(rep.rf_residual, std::abs(lie_g(vp, b, hp, a, hp, c)));

    // nabla-hat g on frame triples, from the coefficient form.
    const Mat frame = model.full_frame(p);
    const ConnMetricSample cms = conn_metric_sample(model, adapted(model), p);
    for (int a = 0; a < n; ++a) {
      const Vec fa = frame.col(a);
      for (int b = 0; b < n; ++b)
        for (int c = b; c < n; ++c)
          rep.rnabla_g_residual = std::max(
              rep.rnabla_g_residual,
              std::abs(covderiv_metric_at(cms, fa, frame.col(b), frame.col(c))));
    }

    for (int idx = 0; idx < n; ++idx) {
      const bool horizontal = idx < model.hdim;
      const VecMap y =
          frame_field(model, p.chart, horizontal, horizontal ? idx : idx - model.hdim);
      rep.trace_residual =
          std::max(rep.trace_residual, std::abs(mixed_bracket_trace(model, p, y)));
    }
  }

  rep.tg_ok = rep.tg_residual <= tol.foliation;
  rep.rf_ok = rep.rf_residual <= tol.foliation;
  rep.rnabla_zero = rep.rnabla_g_residual <= tol.foliation;
  rep.trace_ok = rep.trace_residual <= tol.foliation;
  return rep;
}

}  // namespace geoflow
