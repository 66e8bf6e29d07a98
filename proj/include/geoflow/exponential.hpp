#pragma once

#include "geoflow/hamiltonian.hpp"

namespace geoflow {

// Base projection of the horizontal Hamiltonian flow from covector p.
Point exp_sr(const ModelSpace& model, const Point& x, const Vec& p, double t,
             const FlowConfig& cfg);

struct GeodesicResult {
  Point endpoint;
  Mat transport;  // parallel transport of the coordinate basis, start chart -> end chart
  Trajectory trajectory;
};
// Riemannian geodesic from x with initial velocity v, evaluated at parameter
// t, carrying Levi-Civita parallel transport alongside.
GeodesicResult exp_r(const ModelSpace& model, const Point& x, const Vec& v, double t,
                     const FlowConfig& cfg, bool record_dense = false);

struct FactorizationReport {
  std::vector<double> t_grid;
  std::vector<double> primary;    // per-t residual of the two-geodesic form
  std::vector<double> alternate;  // per-t residual of the swapped form
  std::vector<double> ladder_steps;
  std::vector<double> ladder_primary;   // residual at final grid time per step
  std::vector<double> ladder_alternate;
  double fitted_order_primary = std::numeric_limits<double>::quiet_NaN();
  double fitted_order_alternate = std::numeric_limits<double>::quiet_NaN();
};

// Compares exp_sr(x, t p) against both two-geodesic compositions through the
// Riemannian exponential and vertical parallel transport. Requires the model
// to declare V integrable.
FactorizationReport factorization_check(const ModelSpace& model, const Point& x, const Vec& p,
                                        const std::vector<double>& t_grid, const FlowConfig& cfg,
                                        const std::vector<double>& ladder = {});

struct ProjectionAgreementReport {
  std::vector<double> t_grid;
  std::vector<double> base_distance;  // between the two projected curves
  double sup_base_distance = 0.0;
  double lift_reconstruction = 0.0;   // horizontal lift of the projected geodesic vs exp_sr
};

// Condition: the projections of exp_sr(x, t p) and exp_r(x, t sharp p) to the
// base of the submersion coincide; also rebuilds exp_sr as the horizontal
// lift of the projected Riemannian geodesic.
ProjectionAgreementReport projection_agreement(const ModelSpace& model, const Point& x,
                                               const Vec& p, const std::vector<double>& t_grid,
                                               const FlowConfig& cfg);

struct BaseCurveSample {
  double t = 0.0;
  Point x;        // point on the base
  Vec velocity;   // chart components in x.chart
};

// Horizontal lift of a discretized base curve starting at x0 (which must
// project to the curve start). The curve must be uniformly sampled; the
// integrator advances two samples per RK4 step.
std::vector<Point> horizontal_lift(const ModelSpace& model,
                                   const std::vector<BaseCurveSample>& base_curve,
                                   const Point& x0);

// Least-squares slope of log(residual) against log(step).
double fit_convergence_order(const std::vector<double>& steps,
                             const std::vector<double>& residuals);

}  // namespace geoflow
