#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geoflow/chart.hpp"
#include "geoflow/config.hpp"

namespace geoflow {

struct DeclaredProperties {
  bool v_integrable = false;
  bool totally_geodesic = false;
  bool riemannian_foliation = false;
  bool principal_bundle = false;
};

// Per-chart geometric data. Frames are orthonormal with respect to g; this
// is validated, not assumed (see ModelSpace::validate).
struct ChartGeometry {
  MatMap g;        // metric, dim x dim SPD
  MatMap g_inv;    // closed-form inverse metric
  MatMap hframe;   // dim x hdim, spans H
  MatMap vframe;   // dim x vdim, spans V
  VecMap to_ambient;   // chart -> ambient embedding (identity for flat models)
  MatMap ambient_jacobian;  // its differential
};

enum class Ham { Horizontal, Vertical, Full };

struct CometricField {
  std::vector<MatMap> s;  // per chart, dim x dim PSD
  int rank = 0;
  const MatMap& at(int chart) const { return s.at(static_cast<size_t>(chart)); }
};

// Principal-bundle structure (only hopf_s3 carries one): abelian
// one-dimensional structure group acting on ambient points.
struct BundleData {
  int lie_dim = 1;
  std::vector<BiVecMap> omega_chart;  // per chart: (xi, v_chart) -> lie coefficient(s)
  std::function<Vec(const Vec&, double)> act_ambient;  // (P, theta) -> P . exp^G(theta)
};

class ModelSpace {
 public:
  std::string name;
  int dim = 0, hdim = 0, vdim = 0, ambient_dim = 0;
  Atlas atlas;
  std::vector<ChartGeometry> charts;
  DeclaredProperties declared;
  bool vertical_is_orthogonal = true;  // V declared as the g-orthogonal complement of H
  std::vector<Point> interesting_points;
  double sample_radius = 1.0;   // diagnostics sampling box half-width (chart 0)
  double covector_scale = 3.0;  // magnitude of seeded covectors in studies

  // Cometrics built once from the frames (h*, v*) and from the closed-form
  // inverse metric (g*).
  CometricField comet_h, comet_v, comet_g;

  // Per-chart projector onto H along V (P_V = I - P_H), assembled from the
  // frames by finalize().
  std::vector<MatMap> proj_h;

  // Builds cometrics and projectors from the frames, then validates.
  void finalize(const Tolerances& tol = {});

  // Submersion data (optional).
  std::shared_ptr<const ModelSpace> base;
  std::vector<std::vector<VecMap>> pi_chart;  // [m_chart][b_chart] coordinate form of pi
  BiVecMap dpi_ambient;                       // (P_amb, V_amb) -> base ambient vector
  VecMap pi_ambient;                          // P_amb -> base ambient point

  std::optional<BundleData> bundle;

  bool has_embedding() const { return static_cast<bool>(charts[0].to_ambient); }
  bool has_submersion() const { return base != nullptr; }

  const CometricField& cometric(Ham which) const {
    switch (which) {
      case Ham::Horizontal: return comet_h;
      case Ham::Vertical: return comet_v;
      default: return comet_g;
    }
  }

  Vec to_ambient(const Point& p) const;
  Point from_ambient(const Vec& amb) const;  // charts must provide from_ambient_rule
  std::function<Point(const Vec&)> from_ambient_rule;  // set by sphere models

  // Chart-invariant distance between base points: ambient chord for embedded
  // models, common-chart Euclidean distance otherwise.
  double distance(const Point& a, const Point& b) const;

  // Express b in the chart of a (throws OutOfChart if impossible).
  Point to_chart(const Point& p, int chart) const { return apply_transition(atlas, p, chart); }

  // Project a point through the submersion.
  Point project_to_base(const Point& p) const;
  // Differential of the submersion in chart coordinates at p, as a
  // (base dim) x dim matrix into the chart of project_to_base(p).
  Mat dpi_chart(const Point& p) const;

  // Frame matrix [H|V] at a point (double path).
  Mat full_frame(const Point& p) const;

  // Light-weight construction-time validation: SPD metric, orthonormal
  // frames, transition roundtrips, cometric consistency. Throws on failure.
  void validate(const Tolerances& tol) const;

  // Sample points for diagnostics: low-discrepancy points in the chart-0
  // box plus the declared interesting points.
  std::vector<Point> sample_points(int count) const;
};

enum class FrameSel { Horizontal, Vertical };

// Build the h*/v* cometric from an orthonormal frame; checks the Gram
// matrix at the model's sample points and throws FrameNotOrthonormal with
// the worst deviation when the precondition fails.
CometricField cometric_from_frame(const ModelSpace& model, FrameSel which, bool check = true,
                                  const Tolerances& tol = {});

}  // namespace geoflow
