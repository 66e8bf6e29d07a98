#pragma once

#include "geoflow/model.hpp"

namespace geoflow {

// Raise a covector with the full metric: v = g(x)^{-1} p. Throws
// MetricDegenerate when g(x) fails the SPD check.
TangentVec sharp(const ModelSpace& model, const CotangentVec& p, const Tolerances& tol = {});

// Raise with a (possibly degenerate) cometric: v = s*(x) p.
TangentVec sharp_sub(const ModelSpace& model, const CometricField& s, const CotangentVec& p);

// Orthogonal (or split, when V is declared non-orthogonal) projection of a
// tangent vector onto H or V.
TangentVec project(const ModelSpace& model, const TangentVec& v, bool onto_horizontal);

// Projector matrices and their coordinate partials at a point, computed in
// one dual pass over the frame fields.
struct SplitSample {
  Mat ph, pv;
  Tensor3 dph;  // partials of P_H; partials of P_V are their negatives
};
SplitSample split_projections(const ModelSpace& model, const Point& x);

// Pointwise values without derivatives.
Mat projector_h(const ModelSpace& model, const Point& x);

// Pull back the closed-form metric / cometric at a point.
Mat metric_at(const ModelSpace& model, const Point& x);
Mat cometric_at(const ModelSpace& model, Ham which, const Point& x);

// Push a chart tangent vector to the ambient embedding (identity for flat
// models), and project an ambient tangent back to chart coordinates.
Vec tangent_to_ambient(const ModelSpace& model, const TangentVec& v);

}  // namespace geoflow
