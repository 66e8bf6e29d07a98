#pragma once

#include "geoflow/connection.hpp"

namespace geoflow {

struct PhaseState {
  Point x;
  Vec p;
  double energy_at_start = 0.0;
};

enum class Integrator { RK4, RK45Adaptive, ImplicitMidpoint };

struct FlowConfig {
  Integrator integrator = Integrator::RK4;
  double step = 1e-3;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_chart_switches = 256;
  int record_stride = 1;       // keep every n-th step
  bool transport_basis = false;  // carry a Levi-Civita-parallel coordinate basis
};

struct SwitchEvent {
  double t = 0.0;
  int from = 0, to = 0;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<Point> x;
  std::vector<Vec> p;
  std::vector<double> energy;
  std::vector<Mat> basis;  // parallel-transported basis when requested
  std::vector<SwitchEvent> switches;
  double max_energy_drift = 0.0;
  double step_used = 0.0;

  PhaseState state_at(size_t i) const { return PhaseState{x[i], p[i], energy[0]}; }
  PhaseState final_state() const { return state_at(x.size() - 1); }
  size_t size() const { return t.size(); }
};

// H(x, p) = p^T s*(x) p / 2.
double hamiltonian(const ModelSpace& model, const CometricField& s, const Point& x, const Vec& p);

struct PhaseVelocity {
  Vec xdot;
  Vec pdot;
};
// Canonical equations: xdot = s* p, pdot_i = -p^T (d_i s*) p / 2.
PhaseVelocity hamiltonian_vector_field(const ModelSpace& model, const CometricField& s,
                                       const Point& x, const Vec& p);

// Same field expressed through a connection: xdot = s* p together with
// nabla_{xdot} lambda = -(lambda T(xdot, .) + (nabla_. s*)(lambda,lambda)/2),
// converted back to coordinate pdot. Used as a cross-check of the canonical
// form on sampled states.
PhaseVelocity hamiltonian_vector_field_via_connection(const ModelSpace& model,
                                                      const CometricField& s,
                                                      const Connection& conn, const Point& x,
                                                      const Vec& p);

double poisson_bracket(const ModelSpace& model, const CometricField& a, const CometricField& b,
                       const Point& x, const Vec& p);

Trajectory flow(const ModelSpace& model, Ham which, const PhaseState& start, double time,
                const FlowConfig& cfg);

struct CommutationResidual {
  double base_distance = 0.0;
  double covector_distance = 0.0;
};
// Distance between e^{sa A} e^{sb B}(state) and e^{sb B} e^{sa A}(state).
CommutationResidual flow_commutation_residual(const ModelSpace& model, Ham a, Ham b,
                                              const PhaseState& start, double sa, double sb,
                                              const FlowConfig& cfg);

struct GeodesicEquationResidual {
  double transport_residual = 0.0;  // covector equation defect
  double velocity_residual = 0.0;   // |gamma' - sharp lambda|
};
// Defect of the covector-transport form of the geodesic equations along a
// numerically integrated H^h trajectory, with time derivatives taken by
// fourth-order finite differences of the stored samples.
GeodesicEquationResidual normal_geodesic_residual(const ModelSpace& model, const Connection& conn,
                                                  const PhaseState& start, double time,
                                                  const FlowConfig& cfg);

struct VerticalFlowResidual {
  double parallel_residual = 0.0;       // adapted-connection parallelism of lambda
  double velocity_residual = 0.0;       // |gamma' - sharp^v lambda|
  double lc_parallel_residual = 0.0;    // Levi-Civita parallelism of pr_V^* lambda
};
VerticalFlowResidual vertical_flow_check(const ModelSpace& model, const PhaseState& start,
                                         double time, const FlowConfig& cfg);

// Curve samples (position + velocity) from a trajectory, for transport and
// lifting.
std::vector<CurveSample> trajectory_curve(const ModelSpace& model, Ham which,
                                          const Trajectory& traj);

}  // namespace geoflow
