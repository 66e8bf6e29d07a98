#include "geoflow/metric_ops.hpp"

#include <Eigen/Eigenvalues>

#include "geoflow/errors.hpp"

namespace geoflow {

Mat metric_at(const ModelSpace& model, const Point& x) {
  return model.charts[static_cast<size_t>(x.chart)].g(x.x);
}

Mat cometric_at(const ModelSpace& model, Ham which, const Point& x) {
  return model.cometric(which).at(x.chart)(x.x);
}

TangentVec sharp(const ModelSpace& model, const CotangentVec& p, const Tolerances& tol) {
  const Mat g = metric_at(model, p.base);
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  if (es.eigenvalues().minCoeff() <= tol.spd)
    throw MetricDegenerate(model.name + ": metric degenerate in sharp()");
  return TangentVec{p.base, solve_linear(g, p.components)};
}

TangentVec sharp_sub(const ModelSpace& model, const CometricField& s, const CotangentVec& p) {
  return TangentVec{p.base, s.at(p.base.chart)(p.base.x) * p.components};
}

Mat projector_h(const ModelSpace& model, const Point& x) {
  return model.proj_h[static_cast<size_t>(x.chart)](x.x);
}

TangentVec project(const ModelSpace& model, const TangentVec& v, bool onto_horizontal) {
  const Mat ph = projector_h(model, v.base);
  if (onto_horizontal) return TangentVec{v.base, ph * v.components};
  return TangentVec{v.base, v.components - ph * v.components};
}

SplitSample split_projections(const ModelSpace& model, const Point& x) {
  const auto mp = matrix_partials(model.proj_h[static_cast<size_t>(x.chart)], x.x);
  SplitSample out;
  out.ph = mp.value;
  out.pv = Mat::Identity(model.dim, model.dim) - mp.value;
  out.dph = mp.partials;
  return out;
}

Vec tangent_to_ambient(const ModelSpace& model, const TangentVec& v) {
  const auto& cg = model.charts[static_cast<size_t>(v.base.chart)];
  return cg.ambient_jacobian(v.base.x) * v.components;
}

}  // namespace geoflow
