#pragma once

#include "geoflow/metric_ops.hpp"

namespace geoflow {

// [X,Y] = DY.X - DX.Y in chart coordinates.
TangentVec lie_bracket(const VecMap& x_field, const VecMap& y_field, const Point& at);

// Pointwise tensors are evaluated by extending the given vectors to fields;
// results must agree across strategies (tensoriality), which the test suite
// checks on every model.
enum class Extension { ConstantComponents, FrameCoefficients };

// Vertical part of the bracket of horizontal extensions.
TangentVec curvature(const ModelSpace& model, const Point& at, const Vec& v, const Vec& w,
                     Extension strategy = Extension::ConstantComponents);

// Horizontal part of the bracket of vertical extensions.
TangentVec cocurvature(const ModelSpace& model, const Point& at, const Vec& v, const Vec& w,
                       Extension strategy = Extension::ConstantComponents);

// Frame column as a vector field (generic over the scalar).
VecMap frame_field(const ModelSpace& model, int chart, bool horizontal, int index);

// Scalar field x -> Z(x)^T g(x) W(x).
ScalarMap inner_product_field(const ModelSpace& model, int chart, const VecMap& z, const VecMap& w);

// (L_X g)(Z, W) = X(g(Z,W)) - g([X,Z], W) - g(Z, [X,W]) at a point.
double lie_derivative_metric(const ModelSpace& model, const VecMap& x_field, const VecMap& z_field,
                             const VecMap& w_field, const Point& at);

}  // namespace geoflow
