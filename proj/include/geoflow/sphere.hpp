#pragma once

#include "geoflow/chart.hpp"

namespace geoflow {

// Stereographic chart pair for the n-sphere of a given radius, optionally
// with the ambient frame rotated by an orthogonal matrix. Chart 0 projects
// from +e0, chart 1 from -e0; the transition is the inversion xi / |xi|^2.
struct SphereGeometry {
  int n = 0;
  double radius = 1.0;
  Mat rotation;  // (n+1) x (n+1); identity when empty
  double guard_radius = 6.0;
  double switch_radius = 2.0;

  SphereGeometry(int dim, double r) : n(dim), radius(r) {}

  template <class T>
  VecOf<T> embed(int chart, const VecOf<T>& xi) const {
    const T s = xi.dot(xi);
    const T denom = T(1) / (s + T(1));
    VecOf<T> p(n + 1);
    const double sign = chart == 0 ? 1.0 : -1.0;
    p[0] = T(sign) * (s - T(1)) * denom;
    for (int i = 0; i < n; ++i) p[i + 1] = T(2) * xi[i] * denom;
    if (rotation.size()) p = cast_mat<T>(rotation) * p;
    return VecOf<T>(T(radius) * p);
  }

  template <class T>
  MatOf<T> embed_jacobian(int chart, const VecOf<T>& xi) const {
    const T s = xi.dot(xi);
    const T denom2 = T(1) / ((s + T(1)) * (s + T(1)));
    const double sign = chart == 0 ? 1.0 : -1.0;
    MatOf<T> j(n + 1, n);
    for (int k = 0; k < n; ++k) j(0, k) = T(sign) * T(4) * xi[k] * denom2;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        T val = T(-4) * xi[i] * xi[k] * denom2;
        if (i == k) val += T(2) * (s + T(1)) * denom2;
        j(i + 1, k) = val;
      }
    if (rotation.size()) j = cast_mat<T>(rotation) * j;
    return MatOf<T>(T(radius) * j);
  }

  // Inverse chart map; P must lie on the sphere. Generic so it can appear
  // inside composite fields (the chart index stays fixed during evaluation).
  template <class T>
  VecOf<T> chart_coords(int chart, const VecOf<T>& p_in) const {
    VecOf<T> p = p_in;
    if (rotation.size()) p = cast_mat<T>(rotation).transpose() * p;
    p = T(1.0 / radius) * p;
    const double sign = chart == 0 ? 1.0 : -1.0;
    const T denom = T(1) / (T(1) - T(sign) * p[0]);
    VecOf<T> xi(n);
    for (int i = 0; i < n; ++i) xi[i] = p[i + 1] * denom;
    return xi;
  }

  // Chart pick rule: use the chart in which |xi| <= 1.
  int chart_for_ambient(const Vec& p_in) const {
    Vec p = p_in;
    if (rotation.size()) p = rotation.transpose() * p;
    return p[0] / radius <= 0.0 ? 0 : 1;
  }

  Point point_from_ambient(const Vec& p) const {
    const int c = chart_for_ambient(p);
    return Point{c, chart_coords<double>(c, p)};
  }

  // Pull an ambient tangent vector back to chart components:
  // (J^T J)^{-1} J^T v, with J^T J = 4 r^2 / (1+s)^2 I for these charts.
  template <class T>
  VecOf<T> pullback(int chart, const VecOf<T>& xi, const VecOf<T>& v_amb) const {
    const T s = xi.dot(xi);
    const T factor = (s + T(1)) * (s + T(1)) / T(4.0 * radius * radius);
    return VecOf<T>(factor * (embed_jacobian(chart, xi).transpose() * v_amb));
  }

  // Round metric in chart coordinates: 4 r^2 / (1+s)^2 I.
  template <class T>
  MatOf<T> metric(const VecOf<T>& xi) const {
    const T s = xi.dot(xi);
    const T f = T(4.0 * radius * radius) / ((s + T(1)) * (s + T(1)));
    return MatOf<T>(f * MatOf<T>::Identity(n, n));
  }
  template <class T>
  MatOf<T> inverse_metric(const VecOf<T>& xi) const {
    const T s = xi.dot(xi);
    const T f = ((s + T(1)) * (s + T(1))) / T(4.0 * radius * radius);
    return MatOf<T>(f * MatOf<T>::Identity(n, n));
  }

  Atlas make_atlas() const;
};

}  // namespace geoflow
