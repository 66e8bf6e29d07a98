#include "geoflow/bracket.hpp"

namespace geoflow {

TangentVec lie_bracket(const VecMap& x_field, const VecMap& y_field, const Point& at) {
  const auto xj = vec_with_jacobian(x_field, at.x);
  const auto yj = vec_with_jacobian(y_field, at.x);
  return TangentVec{at, yj.jacobian * xj.value - xj.jacobian * yj.value};
}

namespace {

// Bracket of the projected constant-component extensions of v and w, using
// the projector partials: [P v, P w] with P = P_H or P_V.
Vec projected_constant_bracket(const SplitSample& s, const Vec& v, const Vec& w, bool horizontal) {
  const double sign = horizontal ? 1.0 : -1.0;  // dP_V = -dP_H
  const Mat& p = horizontal ? s.ph : s.pv;
  const Mat jv = sign * s.dph.contract(p * v);  // directional derivative matrix along P v
  const Mat jw = sign * s.dph.contract(p * w);
  return jv * w - jw * v;
}

}  // namespace

TangentVec curvature(const ModelSpace& model, const Point& at, const Vec& v, const Vec& w,
                     Extension strategy) {
  const SplitSample s = split_projections(model, at);
  if (strategy == Extension::ConstantComponents) {
    return TangentVec{at, s.pv * projected_constant_bracket(s, v, w, /*horizontal=*/true)};
  }
  // Frame-coefficient extension: expand pr_H v in the horizontal frame at
  // the point and extend with constant coefficients.
  const auto& cg = model.charts[static_cast<size_t>(at.chart)];
  const Mat a = cg.hframe(at.x);
  const Mat gram = a.transpose() * metric_at(model, at) * a;
  const Vec cv = solve_linear(Mat(gram), Vec(a.transpose() * metric_at(model, at) * (s.ph * v)));
  const Vec cw = solve_linear(Mat(gram), Vec(a.transpose() * metric_at(model, at) * (s.ph * w)));
  VecMap xf([hf = cg.hframe, cv](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    return VecOf<T>(hf(x) * cast_vec<T>(Vec(cv)));
  });
  VecMap yf([hf = cg.hframe, cw](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    return VecOf<T>(hf(x) * cast_vec<T>(Vec(cw)));
  });
  const TangentVec br = lie_bracket(xf, yf, at);
  return TangentVec{at, s.pv * br.components};
}

TangentVec cocurvature(const ModelSpace& model, const Point& at, const Vec& v, const Vec& w,
                       Extension strategy) {
  const SplitSample s = split_projections(model, at);
  if (strategy == Extension::ConstantComponents) {
    return TangentVec{at, s.ph * projected_constant_bracket(s, v, w, /*horizontal=*/false)};
  }
  const auto& cg = model.charts[static_cast<size_t>(at.chart)];
  const Mat b = cg.vframe(at.x);
  const Mat gram = b.transpose() * metric_at(model, at) * b;
  const Vec cv = solve_linear(Mat(gram), Vec(b.transpose() * metric_at(model, at) * (s.pv * v)));
  const Vec cw = solve_linear(Mat(gram), Vec(b.transpose() * metric_at(model, at) * (s.pv * w)));
  VecMap zf([vf = cg.vframe, cv](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    return VecOf<T>(vf(x) * cast_vec<T>(Vec(cv)));
  });
  VecMap wf([vf = cg.vframe, cw](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    return VecOf<T>(vf(x) * cast_vec<T>(Vec(cw)));
  });
  const TangentVec br = lie_bracket(zf, wf, at);
  return TangentVec{at, s.ph * br.components};
}

VecMap frame_field(const ModelSpace& model, int chart, bool horizontal, int index) {
  const auto& cg = model.charts[static_cast<size_t>(chart)];
  const MatMap frame = horizontal ? cg.hframe : cg.vframe;
  return VecMap([frame, index](const auto& x) {
    auto f = frame(x);
    using T = typename std::decay_t<decltype(f)>::Scalar;
    return VecOf<T>(f.col(index));
  });
}

ScalarMap inner_product_field(const ModelSpace& model, int chart, const VecMap& z,
                              const VecMap& w) {
  const MatMap g = model.charts[static_cast<size_t>(chart)].g;
  return ScalarMap([g, z, w](const auto& x) {
    auto zv = z(x);
    auto wv = w(x);
    using T = typename std::decay_t<decltype(zv)>::Scalar;
    return T((zv.transpose() * g(x) * wv)(0, 0));
  });
}

double lie_derivative_metric(const ModelSpace& model, const VecMap& x_field, const VecMap& z_field,
                             const VecMap& w_field, const Point& at) {
  const ScalarMap gzw = inner_product_field(model, at.chart, z_field, w_field);
  const double xf = gradient(gzw, at.x).dot(x_field(at.x));
  const Mat g = metric_at(model, at);
  const Vec xz = lie_bracket(x_field, z_field, at).components;
  const Vec xw = lie_bracket(x_field, w_field, at).components;
  const Vec zv = z_field(at.x), wv = w_field(at.x);
  return xf - xz.dot(g * wv) - zv.dot(g * xw);
}

}  // namespace geoflow
