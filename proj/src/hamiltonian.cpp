#include "geoflow/hamiltonian.hpp"

#include <cmath>

#include "geoflow/errors.hpp"

namespace geoflow {

double hamiltonian(const ModelSpace& model, const CometricField& s, const Point& x, const Vec& p) {
  return 0.5 * p.dot(s.at(x.chart)(x.x) * p);
}

PhaseVelocity hamiltonian_vector_field(const ModelSpace& model, const CometricField& s,
                                       const Point& x, const Vec& p) {
  const auto sp = matrix_partials(s.at(x.chart), x.x);
  PhaseVelocity v;
  v.xdot = sp.value * p;
  v.pdot.resize(p.size());
  for (int i = 0; i < p.size(); ++i) v.pdot[i] = -0.5 * p.dot(sp.partials[i] * p);
  return v;
}

PhaseVelocity hamiltonian_vector_field_via_connection(const ModelSpace& model,
                                                      const CometricField& s,
                                                      const Connection& conn, const Point& x,
                                                      const Vec& p) {
  const auto sp = matrix_partials(s.at(x.chart), x.x);
  const Tensor3 gamma = conn.coeffs(x);
  const int n = model.dim;
  PhaseVelocity v;
  v.xdot = sp.value * p;

  // torsion contraction: (p T(xdot, .))_i = p_k T^k_{xdot, i}
  Vec torsion_term = Vec::Zero(n);
  for (int k = 0; k < n; ++k) {
    const Mat& gk = gamma[k];
    for (int i = 0; i < n; ++i) {
      double tki = 0.0;
      for (int j = 0; j < n; ++j) tki += v.xdot[j] * (gk(j, i) - gk(i, j));
      torsion_term[i] += p[k] * tki;
    }
  }

  // ((nabla_{e_i} s*)(p, p))_i with constant covector extensions.
  Vec nabla_s = Vec::Zero(n);
  const Vec sp_p = sp.value * p;
  for (int i = 0; i < n; ++i) {
    double corr = 0.0;
    for (int k = 0; k < n; ++k)
      for (int m = 0; m < n; ++m) corr += gamma[k](i, m) * p[k] * sp_p[m];
    nabla_s[i] = p.dot(sp.partials[i] * p) + 2.0 * corr;
  }

  const Vec cov_deriv = -(torsion_term + 0.5 * nabla_s);
  v.pdot.resize(n);
  for (int i = 0; i < n; ++i) {
    double conn_term = 0.0;
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) conn_term += v.xdot[j] * gamma[k](j, i) * p[k];
    v.pdot[i] = cov_deriv[i] + conn_term;
  }
  return v;
}

double poisson_bracket(const ModelSpace& model, const CometricField& a, const CometricField& b,
                       const Point& x, const Vec& p) {
  const auto ap = matrix_partials(a.at(x.chart), x.x);
  const auto bp = matrix_partials(b.at(x.chart), x.x);
  const Vec dpa = ap.value * p;  // dH_a/dp
  const Vec dpb = bp.value * p;
  double sum = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    const double dxa = 0.5 * p.dot(ap.partials[i] * p);
    const double dxb = 0.5 * p.dot(bp.partials[i] * p);
    sum += dxa * dpb[i] - dpa[i] * dxb;
  }
  return sum;
}

namespace {

struct FlowWork {
  Point x;
  Vec p;
  Mat basis;  // empty when transport not requested
};

struct FlowDeriv {
  Vec xdot, pdot;
  Mat bdot;
};

FlowDeriv flow_rhs(const ModelSpace& model, const CometricField& s, const FlowWork& y,
                   bool transport) {
  const auto sp = matrix_partials(s.at(y.x.chart), y.x.x);
  FlowDeriv d;
  d.xdot = sp.value * y.p;
  d.pdot.resize(y.p.size());
  for (int i = 0; i < y.p.size(); ++i) d.pdot[i] = -0.5 * y.p.dot(sp.partials[i] * y.p);
  if (transport) {
    const Tensor3 gamma = christoffel(model, y.x);
    d.bdot.resize(y.basis.rows(), y.basis.cols());
    for (int j = 0; j < y.basis.cols(); ++j)
      d.bdot.col(j) = -contract_gamma(gamma, d.xdot, Vec(y.basis.col(j)));
  }
  return d;
}

FlowWork advance(const FlowWork& y, double h, const FlowDeriv& d, bool transport) {
  FlowWork out = y;
  out.x.x += h * d.xdot;
  out.p += h * d.pdot;
  if (transport) out.basis += h * d.bdot;
  return out;
}

FlowWork rk4_step(const ModelSpace& model, const CometricField& s, const FlowWork& y, double h,
                  bool transport) {
  const FlowDeriv k1 = flow_rhs(model, s, y, transport);
  const FlowDeriv k2 = flow_rhs(model, s, advance(y, 0.5 * h, k1, transport), transport);
  const FlowDeriv k3 = flow_rhs(model, s, advance(y, 0.5 * h, k2, transport), transport);
  const FlowDeriv k4 = flow_rhs(model, s, advance(y, h, k3, transport), transport);
  FlowWork out = y;
  out.x.x += (h / 6.0) * (k1.xdot + 2.0 * k2.xdot + 2.0 * k3.xdot + k4.xdot);
  out.p += (h / 6.0) * (k1.pdot + 2.0 * k2.pdot + 2.0 * k3.pdot + k4.pdot);
  if (transport) out.basis += (h / 6.0) * (k1.bdot + 2.0 * k2.bdot + 2.0 * k3.bdot + k4.bdot);
  return out;
}

FlowWork implicit_midpoint_step(const ModelSpace& model, const CometricField& s, const FlowWork& y,
                                double h, bool transport) {
  FlowWork z = advance(y, h, flow_rhs(model, s, y, transport), transport);
  for (int it = 0; it < 100; ++it) {
    FlowWork mid = y;
    mid.x.x = 0.5 * (y.x.x + z.x.x);
    mid.p = 0.5 * (y.p + z.p);
    if (transport) mid.basis = 0.5 * (y.basis + z.basis);
    const FlowWork znext = advance(y, h, flow_rhs(model, s, mid, transport), transport);
    const double delta = (znext.x.x - z.x.x).norm() + (znext.p - z.p).norm();
    z = znext;
    if (delta < 1e-14 * (1.0 + y.x.x.norm() + y.p.norm())) return z;
  }
  throw StepFailure("implicit midpoint iteration did not converge");
}

void apply_switches(const ModelSpace& model, FlowWork& y, double t, int& switches,
                    const FlowConfig& cfg, std::vector<SwitchEvent>& events) {
  const Atlas& atlas = model.atlas;
  while (atlas.chart(y.x.chart).wants_switch(y.x.x)) {
    const Chart& ch = atlas.chart(y.x.chart);
    if (ch.transitions.empty()) break;
    if (++switches > cfg.max_chart_switches)
      throw ChartExhausted("flow: exceeded max chart switches");
    // Pick the transition whose image is closest to the chart center.
    const Transition* best = nullptr;
    Vec best_x;
    for (const auto& tr : ch.transitions) {
      Vec cand = tr.forward(y.x.x);
      if (!best || cand.norm() < best_x.norm()) {
        best = &tr;
        best_x = cand;
      }
    }
    const Mat j = jacobian(best->forward, y.x.x);
    events.push_back(SwitchEvent{t, y.x.chart, best->target});
    y.p = solve_linear(Mat(j.transpose()), y.p);
    if (y.basis.size()) y.basis = j * y.basis;
    y.x = Point{best->target, best_x};
  }
  if (!atlas.chart(y.x.chart).in_domain(y.x.x))
    throw OutOfChart("flow: trajectory left the chart safe region");
}

}  // namespace

Trajectory flow(const ModelSpace& model, Ham which, const PhaseState& start, double time,
                const FlowConfig& cfg) {
  const CometricField& s = model.cometric(which);
  const bool transport = cfg.transport_basis;

  FlowWork y{start.x, start.p, Mat()};
  if (transport) y.basis = Mat::Identity(model.dim, model.dim);

  Trajectory traj;
  const double h0 = hamiltonian(model, s, y.x, y.p);
  traj.step_used = cfg.step;

  auto record = [&](double t) {
    traj.t.push_back(t);
    traj.x.push_back(y.x);
    traj.p.push_back(y.p);
    const double e = hamiltonian(model, s, y.x, y.p);
    traj.energy.push_back(e);
    traj.max_energy_drift = std::max(traj.max_energy_drift, std::abs(e - h0));
    if (transport) traj.basis.push_back(y.basis);
  };
  record(0.0);
  if (time == 0.0) return traj;

  int switches = 0;
  const double dir = time > 0.0 ? 1.0 : -1.0;

  if (cfg.integrator == Integrator::RK45Adaptive) {
    // Dormand-Prince 5(4) with standard step control.
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    double t = 0.0;
    double h = dir * std::min(std::abs(cfg.step), std::abs(time));
    int accepted = 0;
    while (std::abs(t - time) > 1e-15 * std::abs(time)) {
      if (std::abs(h) < 1e-14 * std::abs(time))
        throw StepFailure("rk45: step underflow before reaching requested tolerance");
      if ((t + h - time) * dir > 0.0) h = time - t;
      const FlowDeriv k1 = flow_rhs(model, s, y, transport);
      const FlowDeriv k2 = flow_rhs(model, s, advance(y, h * c2, k1, transport), transport);
      auto lin = [&](std::initializer_list<std::pair<double, const FlowDeriv*>> terms) {
        FlowWork w = y;
        for (auto& [a, kd] : terms) w = advance(w, h * a, *kd, transport);
        return w;
      };
      const FlowDeriv k3 = flow_rhs(model, s, lin({{3.0 / 40, &k1}, {9.0 / 40, &k2}}), transport);
      const FlowDeriv k4 = flow_rhs(
          model, s, lin({{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}}), transport);
      const FlowDeriv k5 = flow_rhs(model, s,
                                    lin({{19372.0 / 6561, &k1},
                                         {-25360.0 / 2187, &k2},
                                         {64448.0 / 6561, &k3},
                                         {-212.0 / 729, &k4}}),
                                    transport);
      const FlowDeriv k6 = flow_rhs(model, s,
                                    lin({{9017.0 / 3168, &k1},
                                         {-355.0 / 33, &k2},
                                         {46732.0 / 5247, &k3},
                                         {49.0 / 176, &k4},
                                         {-5103.0 / 18656, &k5}}),
                                    transport);
      const FlowWork y5 = lin({{35.0 / 384, &k1},
                               {500.0 / 1113, &k3},
                               {125.0 / 192, &k4},
                               {-2187.0 / 6784, &k5},
                               {11.0 / 84, &k6}});
      const FlowDeriv k7 = flow_rhs(model, s, y5, transport);
      // Embedded 4th-order solution for the error estimate.
      const FlowWork y4 = lin({{5179.0 / 57600, &k1},
                               {7571.0 / 16695, &k3},
                               {393.0 / 640, &k4},
                               {-92097.0 / 339200, &k5},
                               {187.0 / 2100, &k6},
                               {1.0 / 40, &k7}});
      const double scale = cfg.abs_tol + cfg.rel_tol * (y.x.x.norm() + y.p.norm());
      const double err = ((y5.x.x - y4.x.x).norm() + (y5.p - y4.p).norm()) / scale;
      if (err <= 1.0) {
        y = y5;
        t += h;
        ++accepted;
        apply_switches(model, y, t, switches, cfg, traj.switches);
        if (accepted % cfg.record_stride == 0 || std::abs(t - time) <= 1e-15 * std::abs(time))
          record(t);
      }
      const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      h *= std::clamp(factor, 0.2, 5.0);
    }
    if (std::abs(traj.t.back() - time) > 1e-12) record(time);
    return traj;
  }

  const long n_steps = std::max<long>(1, std::lround(std::abs(time) / cfg.step));
  const double h = time / static_cast<double>(n_steps);
  traj.step_used = std::abs(h);
  for (long i = 1; i <= n_steps; ++i) {
    if (cfg.integrator == Integrator::ImplicitMidpoint)
      y = implicit_midpoint_step(model, s, y, h, transport);
    else
      y = rk4_step(model, s, y, h, transport);
    const double t = h * static_cast<double>(i);
    apply_switches(model, y, t, switches, cfg, traj.switches);
    if (i % cfg.record_stride == 0 || i == n_steps) record(t);
  }
  return traj;
}

CommutationResidual flow_commutation_residual(const ModelSpace& model, Ham a, Ham b,
                                              const PhaseState& start, double sa, double sb,
                                              const FlowConfig& cfg) {
  FlowConfig quiet = cfg;
  quiet.record_stride = std::numeric_limits<int>::max();

  const PhaseState ab_mid = flow(model, b, start, sb, quiet).final_state();
  const PhaseState ab = flow(model, a, ab_mid, sa, quiet).final_state();
  const PhaseState ba_mid = flow(model, a, start, sa, quiet).final_state();
  const PhaseState ba = flow(model, b, ba_mid, sb, quiet).final_state();

  CommutationResidual r;
  r.base_distance = model.distance(ab.x, ba.x);
  // Compare covectors in a common chart when possible.
  try {
    const CotangentVec moved = push_cotangent(model.atlas, CotangentVec{ba.x, ba.p}, ab.x.chart);
    r.covector_distance = (ab.p - moved.components).norm();
  } catch (const OutOfChart&) {
    r.covector_distance = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

std::vector<CurveSample> trajectory_curve(const ModelSpace& model, Ham which,
                                          const Trajectory& traj) {
  const CometricField& s = model.cometric(which);
  std::vector<CurveSample> out;
  out.reserve(traj.size());
  for (size_t i = 0; i < traj.size(); ++i) {
    const Vec v = s.at(traj.x[i].chart)(traj.x[i].x) * traj.p[i];
    out.push_back(CurveSample{traj.t[i], traj.x[i], v});
  }
  return out;
}

namespace {

// Fourth-order five-point first derivative of a sequence of vectors.
Vec stencil_derivative(const std::vector<Vec>& f, size_t i, double h) {
  return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
}

bool same_chart_window(const Trajectory& traj, size_t i) {
  const int c = traj.x[i].chart;
  for (size_t k = i - 2; k <= i + 2; ++k)
    if (traj.x[k].chart != c) return false;
  return true;
}

}  // namespace

GeodesicEquationResidual normal_geodesic_residual(const ModelSpace& model, const Connection& conn,
                                                  const PhaseState& start, double time,
                                                  const FlowConfig& cfg) {
  FlowConfig dense = cfg;
  dense.record_stride = 1;
  const Trajectory traj = flow(model, Ham::Horizontal, start, time, dense);
  const CometricField& s = model.comet_h;
  const double h = traj.step_used;
  const int n = model.dim;

  GeodesicEquationResidual out;
  const size_t stride = std::max<size_t>(1, traj.size() / 64);
  for (size_t i = 2; i + 2 < traj.size(); i += stride) {
    if (!same_chart_window(traj, i)) continue;
    const Point& x = traj.x[i];
    const Vec& p = traj.p[i];
    const Vec lambda_dot = stencil_derivative(traj.p, i, h);
    const Vec gamma_dot_fd = stencil_derivative([&] {
      std::vector<Vec> xs;
      for (size_t k = i - 2; k <= i + 2; ++k) xs.push_back(traj.x[k].x);
      return xs;
    }(), 2, h);

    const auto sp = matrix_partials(s.at(x.chart), x.x);
    const Vec gamma_dot = sp.value * p;
    out.velocity_residual = std::max(out.velocity_residual, (gamma_dot_fd - gamma_dot).norm());

    const Tensor3 gamma = conn.coeffs(x);
    Vec residual(n);
    for (int ii = 0; ii < n; ++ii) {
      double cov = lambda_dot[ii];
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) cov -= gamma_dot[j] * gamma[k](j, ii) * p[k];
      double torsion = 0.0;
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
          torsion += p[k] * gamma_dot[j] * (gamma[k](j, ii) - gamma[k](ii, j));
      double nabla_s = p.dot(sp.partials[ii] * p);
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) nabla_s += 2.0 * gamma[k](ii, m) * p[k] * gamma_dot[m];
      residual[ii] = cov + torsion + 0.5 * nabla_s;
    }
    out.transport_residual = std::max(out.transport_residual, residual.norm());
  }
  return out;
}

VerticalFlowResidual vertical_flow_check(const ModelSpace& model, const PhaseState& start,
                                         double time, const FlowConfig& cfg) {
  FlowConfig dense = cfg;
  dense.record_stride = 1;
  const Trajectory traj = flow(model, Ham::Vertical, start, time, dense);
  const CometricField& s = model.comet_v;
  const double h = traj.step_used;
  const int n = model.dim;
  const Connection hat = adapted(model);
  const Connection lc = levi_civita(model);

  // Levi-Civita parallelism of pr_V^* lambda is only expected on totally
  // geodesic models.
  const bool check_lc = model.declared.totally_geodesic;

  std::vector<Vec> mu(traj.size());
  if (check_lc)
    for (size_t i = 0; i < traj.size(); ++i) {
      const Mat ph = projector_h(model, traj.x[i]);
      mu[i] = traj.p[i] - ph.transpose() * traj.p[i];
    }

  VerticalFlowResidual out;
  const size_t stride = std::max<size_t>(1, traj.size() / 64);
  for (size_t i = 2; i + 2 < traj.size(); i += stride) {
    if (!same_chart_window(traj, i)) continue;
    const Point& x = traj.x[i];
    const Vec& p = traj.p[i];
    const Vec lambda_dot = stencil_derivative(traj.p, i, h);
    const Vec gamma_dot = s.at(x.chart)(x.x) * p;

    std::vector<Vec> xs;
    for (size_t k = i - 2; k <= i + 2; ++k) xs.push_back(traj.x[k].x);
    out.velocity_residual =
        std::max(out.velocity_residual, (stencil_derivative(xs, 2, h) - gamma_dot).norm());

    auto parallel_defect = [&](const Tensor3& gm, const Vec& lam, const Vec& lam_dot) {
      Vec r(n);
      for (int ii = 0; ii < n; ++ii) {
        double cov = lam_dot[ii];
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) cov -= gamma_dot[j] * gm[k](j, ii) * lam[k];
        r[ii] = cov;
      }
      return r.norm();
    };
    out.parallel_residual =
        std::max(out.parallel_residual, parallel_defect(hat.coeffs(x), p, lambda_dot));
    if (check_lc) {
      std::vector<Vec> mus(mu.begin() + static_cast<long>(i) - 2,
                           mu.begin() + static_cast<long>(i) + 3);
      out.lc_parallel_residual = std::max(
          out.lc_parallel_residual,
          parallel_defect(lc.coeffs(x), mu[i], stencil_derivative(mus, 2, h)));
    }
  }
  return out;
}

}  // namespace geoflow
