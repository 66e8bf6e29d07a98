#pragma once

#include "geoflow/exponential.hpp"

namespace geoflow {

struct GaugeReport {
  std::vector<double> t_grid;
  std::vector<double> residual;     // gauge composition vs exp_sr, per t
  double sup_residual = 0.0;
  double omega_deviation = 0.0;     // drift of omega(gamma') along the Riemannian geodesic
  double fiber_geodesic_residual = 0.0;  // pure-fiber geodesic vs group action
};

// Checks exp_sr(x, t p) against exp_r(x, t sharp p) followed by the group
// action with parameter -t omega(sharp p). Requires principal-bundle data.
GaugeReport gauge_formula_check(const ModelSpace& model, const Point& x, const Vec& p,
                                const std::vector<double>& t_grid, const FlowConfig& cfg);

struct LcpbReport {
  double horizontal = 0.0;     // nabla_{hX} hY vs lifted base derivative + R/2
  double vertical = 0.0;       // nabla_{xi} xi vs 0 (abelian structure group)
  double mixed = 0.0;          // nabla_{hX} xi vs -sharp g(xi, R(hX, .))/2
  double mixed_swapped = 0.0;  // nabla_{xi} hX vs +sharp g(xi, R(hX, .))/2
  int samples = 0;
};

LcpbReport lcpb_relations_check(const ModelSpace& model, const std::vector<Point>& samples);

// Horizontal lift of a base vector field through the submersion, as a field
// on the total space (valid while projections stay in the given base chart).
VecMap lifted_base_field(const ModelSpace& model, int chart, int base_chart,
                         const VecMap& base_field);

}  // namespace geoflow
