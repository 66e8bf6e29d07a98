#include "geoflow/models.hpp"

namespace geoflow {

namespace {

Chart full_space_chart(int dim, double guard_radius) {
  Chart ch;
  ch.id = 0;
  ch.dim = dim;
  ch.guard = [guard_radius](const Vec& x) { return x.allFinite() && x.norm() < guard_radius; };
  return ch;
}

VecMap identity_map() {
  return VecMap([](const auto& x) { return x; });
}

MatMap identity_jacobian(int dim) {
  return MatMap([dim](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    (void)x;
    return MatOf<T>(MatOf<T>::Identity(dim, dim));
  });
}

// Plane base space for the coordinate submersions (x,y,z) -> (x,y).
std::shared_ptr<ModelSpace> plane_base() {
  auto m = std::make_shared<ModelSpace>();
  m->name = "plane";
  m->dim = 2;
  m->hdim = 2;
  m->vdim = 0;
  m->ambient_dim = 2;
  m->atlas.charts.push_back(full_space_chart(2, 1e6));
  ChartGeometry cg;
  cg.g = MatMap::constant(Mat::Identity(2, 2));
  cg.g_inv = MatMap::constant(Mat::Identity(2, 2));
  cg.hframe = MatMap::constant(Mat::Identity(2, 2));
  cg.vframe = MatMap::constant(Mat(2, 0));
  cg.to_ambient = identity_map();
  cg.ambient_jacobian = identity_jacobian(2);
  m->charts.push_back(std::move(cg));
  m->from_ambient_rule = [](const Vec& a) { return Point{0, a}; };
  m->sample_radius = 1.5;
  m->finalize();
  return m;
}

void attach_coordinate_submersion(ModelSpace& m) {
  m.base = plane_base();
  auto pi = VecMap([](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    V out(2);
    out[0] = x[0];
    out[1] = x[1];
    return out;
  });
  m.pi_ambient = pi;
  m.dpi_ambient = BiVecMap([](const auto& p, const auto& v) {
    using V = std::decay_t<decltype(p)>;
    (void)p;
    V out(2);
    out[0] = v[0];
    out[1] = v[1];
    return out;
  });
  m.pi_chart = {{pi}};
}

}  // namespace

std::shared_ptr<ModelSpace> heisenberg() {
  auto m = std::make_shared<ModelSpace>();
  m->name = "heisenberg";
  m->dim = 3;
  m->hdim = 2;
  m->vdim = 1;
  m->ambient_dim = 3;
  m->atlas.charts.push_back(full_space_chart(3, 1e6));

  ChartGeometry cg;
  // Frame X = dx - (y/2) dz, Y = dy + (x/2) dz, Z = dz; g makes it
  // orthonormal, so g = C^{-T} C^{-1} and g^{-1} = C C^T for C = [X Y Z].
  cg.hframe = MatMap([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    MatOf<T> a = MatOf<T>::Zero(3, 2);
    a(0, 0) = T(1);
    a(2, 0) = T(-0.5) * x[1];
    a(1, 1) = T(1);
    a(2, 1) = T(0.5) * x[0];
    return a;
  });
  cg.vframe = MatMap([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    (void)x;
    MatOf<T> b = MatOf<T>::Zero(3, 1);
    b(2, 0) = T(1);
    return b;
  });
  cg.g = MatMap([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    const T hx = T(0.5) * x[0];
    const T hy = T(0.5) * x[1];
    MatOf<T> g(3, 3);
    g(0, 0) = T(1) + hy * hy;
    g(0, 1) = T(-1) * hx * hy;
    g(0, 2) = hy;
    g(1, 0) = g(0, 1);
    g(1, 1) = T(1) + hx * hx;
    g(1, 2) = T(-1) * hx;
    g(2, 0) = hy;
    g(2, 1) = g(1, 2);
    g(2, 2) = T(1);
    return g;
  });
  cg.g_inv = MatMap([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    const T hx = T(0.5) * x[0];
    const T hy = T(0.5) * x[1];
    MatOf<T> gi(3, 3);
    gi(0, 0) = T(1);
    gi(0, 1) = T(0);
    gi(0, 2) = T(-1) * hy;
    gi(1, 0) = T(0);
    gi(1, 1) = T(1);
    gi(1, 2) = hx;
    gi(2, 0) = gi(0, 2);
    gi(2, 1) = gi(1, 2);
    gi(2, 2) = T(1) + hx * hx + hy * hy;
    return gi;
  });
  cg.to_ambient = identity_map();
  cg.ambient_jacobian = identity_jacobian(3);
  m->charts.push_back(std::move(cg));

  m->from_ambient_rule = [](const Vec& a) { return Point{0, a}; };
  m->declared = DeclaredProperties{true, true, true, false};
  m->vertical_is_orthogonal = true;
  m->sample_radius = 1.5;
  m->covector_scale = 3.0;
  m->interesting_points.push_back(Point{0, Vec::Zero(3)});
  {
    Vec q(3);
    q << 0.0, 2.0, 0.0;
    m->interesting_points.push_back(Point{0, q});
  }
  attach_coordinate_submersion(*m);
  m->finalize();
  return m;
}

std::shared_ptr<ModelSpace> flat_split() {
  auto m = std::make_shared<ModelSpace>();
  m->name = "flat_split";
  m->dim = 3;
  m->hdim = 2;
  m->vdim = 1;
  m->ambient_dim = 3;
  m->atlas.charts.push_back(full_space_chart(3, 1e6));

  ChartGeometry cg;
  Mat h = Mat::Zero(3, 2);
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  Mat v = Mat::Zero(3, 1);
  v(2, 0) = 1.0;
  cg.hframe = MatMap::constant(h);
  cg.vframe = MatMap::constant(v);
  cg.g = MatMap::constant(Mat::Identity(3, 3));
  cg.g_inv = MatMap::constant(Mat::Identity(3, 3));
  cg.to_ambient = identity_map();
  cg.ambient_jacobian = identity_jacobian(3);
  m->charts.push_back(std::move(cg));

  m->from_ambient_rule = [](const Vec& a) { return Point{0, a}; };
  m->declared = DeclaredProperties{true, true, true, false};
  m->sample_radius = 1.5;
  m->covector_scale = 2.0;
  m->interesting_points.push_back(Point{0, Vec::Zero(3)});
  attach_coordinate_submersion(*m);
  m->finalize();
  return m;
}

std::shared_ptr<ModelSpace> warped_control() {
  auto m = std::make_shared<ModelSpace>();
  m->name = "warped_control";
  m->dim = 3;
  m->hdim = 2;
  m->vdim = 1;
  m->ambient_dim = 3;
  m->atlas.charts.push_back(full_space_chart(3, 1e6));

  ChartGeometry cg;
  // g = dx^2 + dy^2 + e^{2x} dz^2; unit vertical frame Z = e^{-x} dz.
  Mat h = Mat::Zero(3, 2);
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  cg.hframe = MatMap::constant(h);
  cg.vframe = MatMap([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    MatOf<T> b = MatOf<T>::Zero(3, 1);
    b(2, 0) = exp(T(-1) * x[0]);
    return b;
  });
  cg.g = MatMap([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    MatOf<T> g = MatOf<T>::Identity(3, 3);
    g(2, 2) = exp(T(2) * x[0]);
    return g;
  });
  cg.g_inv = MatMap([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    MatOf<T> gi = MatOf<T>::Identity(3, 3);
    gi(2, 2) = exp(T(-2) * x[0]);
    return gi;
  });
  cg.to_ambient = identity_map();
  cg.ambient_jacobian = identity_jacobian(3);
  m->charts.push_back(std::move(cg));

  m->from_ambient_rule = [](const Vec& a) { return Point{0, a}; };
  // Fibers are straight coordinate lines but not geodesics of g: the leaves
  // form a Riemannian, non-totally-geodesic foliation.
  m->declared = DeclaredProperties{true, false, true, false};
  m->sample_radius = 1.0;
  m->covector_scale = 2.0;
  m->interesting_points.push_back(Point{0, Vec::Zero(3)});
  attach_coordinate_submersion(*m);
  m->finalize();
  return m;
}

}  // namespace geoflow
