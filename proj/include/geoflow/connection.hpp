#pragma once

#include "geoflow/bracket.hpp"

namespace geoflow {

enum class ConnKind { LeviCivita, Adapted };

// Connection coefficients at a point: coeffs.d[k](i,j) = Gamma^k_{ij}, so
// nabla_{e_i} e_j = Gamma^k_{ij} e_k for the coordinate frame.
struct Connection {
  ConnKind kind = ConnKind::LeviCivita;
  const ModelSpace* model = nullptr;
  Tensor3 coeffs(const Point& x) const;
};

Connection levi_civita(const ModelSpace& model);
// The connection adapted to the H/V splitting: projected Levi-Civita on
// each factor plus the mixed bracket terms.
Connection adapted(const ModelSpace& model);

// Levi-Civita coefficients directly from metric partials.
Tensor3 christoffel(const ModelSpace& model, const Point& x);

// Gamma(u, v)^k contraction helper.
Vec contract_gamma(const Tensor3& gamma, const Vec& u, const Vec& v);

// nabla_X Y at a point for vector fields.
TangentVec covderiv(const ModelSpace& model, const Connection& conn, const VecMap& x_field,
                    const VecMap& y_field, const Point& at);

// Torsion of the adapted connection on constant-component extensions.
TangentVec adapted_torsion(const ModelSpace& model, const Point& at, const Vec& v, const Vec& w);

// (nabla_v g)(w1, w2) using constant-component extensions.
double covderiv_metric(const ModelSpace& model, const Connection& conn, const Vec& v, const Vec& w1,
                       const Vec& w2, const Point& at);

// Precomputed metric/connection data at a point, for evaluating many
// covariant-derivative contractions cheaply.
struct ConnMetricSample {
  Mat g;
  Tensor3 dg;
  Tensor3 gamma;
};
ConnMetricSample conn_metric_sample(const ModelSpace& model, const Connection& conn,
                                    const Point& at);
double covderiv_metric_at(const ConnMetricSample& s, const Vec& v, const Vec& w1, const Vec& w2);

// II(z1, z2) = pr_H nabla^g_{pr_V z1} pr_V z2.
TangentVec second_fundamental_form(const ModelSpace& model, const Vec& z1, const Vec& z2,
                                   const Point& at);

struct CurveSample {
  double t = 0.0;
  Point x;
  Vec velocity;
};

// Transport v0 along a discretized curve solving nabla_{gamma'} v = 0 with
// RK4 over sample triples (the curve must be sampled at uniform step h; the
// integrator advances 2h per stage set). Chart switches along the curve are
// applied to the transported vector.
std::vector<TangentVec> parallel_transport(const ModelSpace& model, const Connection& conn,
                                           const std::vector<CurveSample>& curve, const Vec& v0);

struct FoliationReport {
  double tg_residual = 0.0;      // sup |(L_X g)(Z,Z)|
  double rf_residual = 0.0;      // sup |(L_Z g)(X,X)|
  double rnabla_g_residual = 0.0;  // sup |nabla-hat g| on frame triples
  double trace_residual = 0.0;   // sup |trace of the mixed-bracket map|
  bool tg_ok = false;
  bool rf_ok = false;
  bool rnabla_zero = false;
  bool trace_ok = false;
  int samples = 0;
  double tol = 0.0;
};

FoliationReport foliation_diagnostics(const ModelSpace& model, const std::vector<Point>& samples,
                                      const Tolerances& tol = {});

// Trace of X -> pr_H [pr_V Y, pr_V [pr_H Y, pr_H X]] at a point.
double mixed_bracket_trace(const ModelSpace& model, const Point& at, const VecMap& y_field);

}  // namespace geoflow
