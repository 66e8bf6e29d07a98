#include "geoflow/model.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>

#include "geoflow/errors.hpp"
#include "geoflow/metric_ops.hpp"
#include "geoflow/samplers.hpp"

namespace geoflow {

Vec ModelSpace::to_ambient(const Point& p) const {
  return charts[static_cast<size_t>(p.chart)].to_ambient(p.x);
}

Point ModelSpace::from_ambient(const Vec& amb) const {
  if (!from_ambient_rule) throw GeoflowError(name + ": no from_ambient rule");
  return from_ambient_rule(amb);
}

double ModelSpace::distance(const Point& a, const Point& b) const {
  return (to_ambient(a) - to_ambient(b)).norm();
}

Point ModelSpace::project_to_base(const Point& p) const {
  if (!has_submersion()) throw SubmersionNotDeclared(name + ": no submersion declared");
  const Vec base_amb = pi_ambient(to_ambient(p));
  return base->from_ambient(base_amb);
}

Mat ModelSpace::dpi_chart(const Point& p) const {
  if (!has_submersion()) throw SubmersionNotDeclared(name + ": no submersion declared");
  const Point bp = project_to_base(p);
  return jacobian(pi_chart[static_cast<size_t>(p.chart)][static_cast<size_t>(bp.chart)], p.x);
}

Mat ModelSpace::full_frame(const Point& p) const {
  const auto& cg = charts[static_cast<size_t>(p.chart)];
  Mat f(dim, dim);
  f.leftCols(hdim) = cg.hframe(p.x);
  f.rightCols(vdim) = cg.vframe(p.x);
  return f;
}

std::vector<Point> ModelSpace::sample_points(int count) const {
  std::vector<Point> pts;
  for (const Vec& x : halton_box(dim, count, sample_radius)) pts.push_back(Point{0, x});
  for (const Point& p : interesting_points) pts.push_back(p);
  return pts;
}

CometricField cometric_from_frame(const ModelSpace& model, FrameSel which, bool check,
                                  const Tolerances& tol) {
  CometricField field;
  field.rank = which == FrameSel::Horizontal ? model.hdim : model.vdim;
  for (const auto& cg : model.charts) {
    const MatMap frame = which == FrameSel::Horizontal ? cg.hframe : cg.vframe;
    field.s.push_back(MatMap([frame](const auto& x) {
      auto a = frame(x);
      using M = std::decay_t<decltype(a)>;
      return M(a * a.transpose());
    }));
  }
  if (check && field.rank > 0) {
    double worst = 0.0;
    for (const Point& p : model.sample_points(8)) {
      const auto& cg = model.charts[static_cast<size_t>(p.chart)];
      const Mat a = which == FrameSel::Horizontal ? cg.hframe(p.x) : cg.vframe(p.x);
      const Mat gram = a.transpose() * cg.g(p.x) * a;
      worst = std::max(worst, (gram - Mat::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff());
    }
    if (worst > tol.frame_gram) {
      std::ostringstream os;
      os << model.name << ": frame not orthonormal, max Gram deviation " << worst;
      throw FrameNotOrthonormal(os.str());
    }
  }
  return field;
}

void ModelSpace::finalize(const Tolerances& tol) {
  comet_h = cometric_from_frame(*this, FrameSel::Horizontal, /*check=*/true, tol);
  comet_v = cometric_from_frame(*this, FrameSel::Vertical, /*check=*/true, tol);
  comet_g.rank = dim;
  comet_g.s.clear();
  for (const auto& cg : charts) comet_g.s.push_back(cg.g_inv);

  proj_h.clear();
  const int k = hdim;
  for (const auto& cg : charts) {
    proj_h.push_back(MatMap([hf = cg.hframe, vf = cg.vframe, k](const auto& x) {
      auto a = hf(x);
      auto b = vf(x);
      using M = std::decay_t<decltype(a)>;
      M f(a.rows(), a.rows());
      f.leftCols(a.cols()) = a;
      f.rightCols(b.cols()) = b;
      M fi = inverse(f);
      return M(a * fi.topRows(k));
    }));
  }
  validate(tol);
}

void ModelSpace::validate(const Tolerances& tol) const {
  for (const Point& p : sample_points(8)) {
    const auto& cg = charts[static_cast<size_t>(p.chart)];
    const Mat g = cg.g(p.x);

    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    if (es.eigenvalues().minCoeff() <= tol.spd) {
      std::ostringstream os;
      os << name << ": metric not positive definite at sample (min eig "
         << es.eigenvalues().minCoeff() << ")";
      throw MetricDegenerate(os.str());
    }

    const Mat f = full_frame(p);
    if (std::abs(f.fullPivLu().determinant()) < 1e-12)
      throw FrameDegenerate(name + ": frame degenerate at sample point");

    if (vertical_is_orthogonal && hdim > 0 && vdim > 0) {
      const Mat cross = cg.hframe(p.x).transpose() * g * cg.vframe(p.x);
      if (cross.cwiseAbs().maxCoeff() > tol.frame_gram)
        throw FrameNotOrthonormal(name + ": declared orthogonal splitting is not g-orthogonal");
    }

    // Closed-form inverse metric and frame cometrics must be consistent.
    const Mat ginv = cg.g_inv(p.x);
    const double inv_defect = (g * ginv - Mat::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (inv_defect > 1e-9)
      throw GeoflowError(name + ": closed-form inverse metric defect " + std::to_string(inv_defect));
    if (vertical_is_orthogonal) {
      const Mat sum = comet_h.at(p.chart)(p.x) + comet_v.at(p.chart)(p.x);
      if ((sum - ginv).cwiseAbs().maxCoeff() > tol.exact_identity)
        throw GeoflowError(name + ": h* + v* does not reproduce g*");
    }

    if ((transition_roundtrip_defect(atlas, p)) > tol.transition)
      throw GeoflowError(name + ": chart transition roundtrip defect");
  }
}

}  // namespace geoflow
