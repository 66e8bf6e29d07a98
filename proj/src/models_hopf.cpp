#include "geoflow/algebra.hpp"
#include "geoflow/models.hpp"
#include "geoflow/sphere.hpp"

namespace geoflow {

namespace {

// Round-sphere base space with trivial splitting (all of TB horizontal).
std::shared_ptr<ModelSpace> sphere_base(const std::string& name, int dim, double radius) {
  auto sg = std::make_shared<SphereGeometry>(dim, radius);
  auto m = std::make_shared<ModelSpace>();
  m->name = name;
  m->dim = dim;
  m->hdim = dim;
  m->vdim = 0;
  m->ambient_dim = dim + 1;
  m->atlas = sg->make_atlas();
  for (int c = 0; c < 2; ++c) {
    ChartGeometry cg;
    cg.g = MatMap([sg](const auto& x) { return sg->metric(x); });
    cg.g_inv = MatMap([sg](const auto& x) { return sg->inverse_metric(x); });
    cg.hframe = MatMap([sg, dim](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::Scalar;
      // Conformal rescaling of the coordinate frame is orthonormal.
      const T s = x.dot(x);
      const T f = (s + T(1)) / T(2.0 * sg->radius);
      return MatOf<T>(f * MatOf<T>::Identity(dim, dim));
    });
    cg.vframe = MatMap([dim](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::Scalar;
      (void)x;
      return MatOf<T>(MatOf<T>::Zero(dim, 0));
    });
    cg.to_ambient = VecMap([sg, c](const auto& x) { return sg->embed(c, x); });
    cg.ambient_jacobian = MatMap([sg, c](const auto& x) { return sg->embed_jacobian(c, x); });
    m->charts.push_back(std::move(cg));
  }
  m->from_ambient_rule = [sg](const Vec& p) { return sg->point_from_ambient(p); };
  m->sample_radius = 1.0;
  m->finalize();
  return m;
}

template <class T>
Quat<T> embedded_quat(const SphereGeometry& sg, int chart, const VecOf<T>& xi) {
  return Quat<T>::from_vec(sg.embed(chart, xi));
}

}  // namespace

std::shared_ptr<ModelSpace> hopf_s3() {
  auto sg = std::make_shared<SphereGeometry>(3, 1.0);
  auto m = std::make_shared<ModelSpace>();
  m->name = "hopf_s3";
  m->dim = 3;
  m->hdim = 2;
  m->vdim = 1;
  m->ambient_dim = 4;
  m->atlas = sg->make_atlas();

  for (int c = 0; c < 2; ++c) {
    ChartGeometry cg;
    cg.g = MatMap([sg](const auto& x) { return sg->metric(x); });
    cg.g_inv = MatMap([sg](const auto& x) { return sg->inverse_metric(x); });
    // Global orthonormal frame q.i (vertical, the circle direction), q.j and
    // q.k (horizontal).
    cg.vframe = MatMap([sg, c](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::Scalar;
      const Quat<T> q = embedded_quat(*sg, c, x);
      const Quat<T> qi = q * Quat<T>{T(0), T(1), T(0), T(0)};
      VecOf<T> amb(4);
      qi.to_vec(amb);
      MatOf<T> out(3, 1);
      out.col(0) = sg->pullback(c, x, amb);
      return out;
    });
    cg.hframe = MatMap([sg, c](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::Scalar;
      const Quat<T> q = embedded_quat(*sg, c, x);
      MatOf<T> out(3, 2);
      VecOf<T> amb(4);
      (q * Quat<T>{T(0), T(0), T(1), T(0)}).to_vec(amb);
      out.col(0) = sg->pullback(c, x, amb);
      (q * Quat<T>{T(0), T(0), T(0), T(1)}).to_vec(amb);
      out.col(1) = sg->pullback(c, x, amb);
      return out;
    });
    cg.to_ambient = VecMap([sg, c](const auto& x) { return sg->embed(c, x); });
    cg.ambient_jacobian = MatMap([sg, c](const auto& x) { return sg->embed_jacobian(c, x); });
    m->charts.push_back(std::move(cg));
  }
  m->from_ambient_rule = [sg](const Vec& p) { return sg->point_from_ambient(p); };

  m->base = sphere_base("s2_half", 2, 0.5);
  auto sgb = std::make_shared<SphereGeometry>(2, 0.5);

  auto pi_amb_impl = [](const auto& p) {
    using V = std::decay_t<decltype(p)>;
    using T = typename V::Scalar;
    const Quat<T> q = Quat<T>::from_vec(p);
    const Quat<T> r = q * Quat<T>{T(0), T(1), T(0), T(0)} * q.conj();
    V out(3);
    out[0] = T(0.5) * r.x;
    out[1] = T(0.5) * r.y;
    out[2] = T(0.5) * r.z;
    return out;
  };
  m->pi_ambient = VecMap(pi_amb_impl);
  m->dpi_ambient = BiVecMap([](const auto& p, const auto& v) {
    using V = std::decay_t<decltype(p)>;
    using T = typename V::Scalar;
    const Quat<T> q = Quat<T>::from_vec(p);
    const Quat<T> w = Quat<T>::from_vec(v);
    const Quat<T> i{T(0), T(1), T(0), T(0)};
    const Quat<T> r = w * i * q.conj() + q * i * w.conj();
    V out(3);
    out[0] = T(0.5) * r.x;
    out[1] = T(0.5) * r.y;
    out[2] = T(0.5) * r.z;
    return out;
  });
  m->pi_chart.assign(2, std::vector<VecMap>(2));
  for (int c = 0; c < 2; ++c)
    for (int b = 0; b < 2; ++b)
      m->pi_chart[static_cast<size_t>(c)][static_cast<size_t>(b)] =
          VecMap([sg, sgb, c, b, pi_amb_impl](const auto& x) {
            return sgb->chart_coords(b, pi_amb_impl(sg->embed(c, x)));
          });

  BundleData bd;
  bd.lie_dim = 1;
  for (int c = 0; c < 2; ++c)
    bd.omega_chart.push_back(BiVecMap([sg, c](const auto& x, const auto& v) {
      using V = std::decay_t<decltype(x)>;
      using T = typename V::Scalar;
      const VecOf<T> amb = sg->embed_jacobian(c, x) * v;
      const Quat<T> q = embedded_quat(*sg, c, x);
      VecOf<T> qi(4);
      (q * Quat<T>{T(0), T(1), T(0), T(0)}).to_vec(qi);
      V out(1);
      out[0] = amb.dot(qi);
      return out;
    }));
  bd.act_ambient = [](const Vec& p, double theta) {
    const Quaternion q = Quaternion::from_vec(p);
    const Quaternion g{std::cos(theta), std::sin(theta), 0.0, 0.0};
    return quat_to_vec(q * g);
  };
  m->bundle = std::move(bd);

  m->declared = DeclaredProperties{true, true, true, true};
  m->sample_radius = 1.2;
  m->covector_scale = 4.0;
  m->interesting_points.push_back(Point{0, Vec::Zero(3)});
  {
    Vec q(3);
    q << 0.7, -0.3, 0.4;
    m->interesting_points.push_back(Point{0, q});
  }
  m->finalize();
  return m;
}

namespace {

// Frames for the 15-sphere fibered by the octonionic lines L_m. At (x, y)
// with y = m x the fiber is the unit sphere of {(w, m w)}; its orthogonal
// complement {(-conj(m) b, b)} is the horizontal space.
template <class T>
void octonionic_frames(const VecOf<T>& amb, MatOf<T>* horizontal, MatOf<T>* vertical) {
  const Oct<T> x = Oct<T>::from_vec(amb, 0);
  const Oct<T> y = Oct<T>::from_vec(amb, 8);
  const T nx2 = x.norm2();
  const bool first_branch = value_of(nx2) >= 0.5;

  MatOf<T> span_cols(16, 8), horiz_cols(16, 8);
  if (first_branch) {
    const Oct<T> mconj = (T(1) / nx2) * (x * y.conj());  // conj(m) for m = y x^{-1}
    const Oct<T> mm = mconj.conj();
    const T scale = T(1) / sqrt(T(1) + mm.norm2());
    for (int i = 0; i < 8; ++i) {
      const Oct<T> e = Oct<T>::unit(i);
      VecOf<T> col(16);
      e.to_vec(col, 0);
      (mm * e).to_vec(col, 8);
      span_cols.col(i) = scale * col;
      VecOf<T> hcol(16);
      (T(-1) * (mconj * e)).to_vec(hcol, 0);
      e.to_vec(hcol, 8);
      horiz_cols.col(i) = scale * hcol;
    }
  } else {
    const T ny2 = y.norm2();
    const Oct<T> mconj = (T(1) / ny2) * (y * x.conj());  // conj(m') for m' = x y^{-1}
    const Oct<T> mm = mconj.conj();
    const T scale = T(1) / sqrt(T(1) + mm.norm2());
    for (int i = 0; i < 8; ++i) {
      const Oct<T> e = Oct<T>::unit(i);
      VecOf<T> col(16);
      (mm * e).to_vec(col, 0);
      e.to_vec(col, 8);
      span_cols.col(i) = scale * col;
      VecOf<T> hcol(16);
      e.to_vec(hcol, 0);
      (T(-1) * (mconj * e)).to_vec(hcol, 8);
      horiz_cols.col(i) = scale * hcol;
    }
  }
  *horizontal = horiz_cols;

  // The fiber tangent is the part of span_cols orthogonal to the point
  // itself. Drop the column most aligned with it and re-orthonormalize.
  int drop = 0;
  double best = -1.0;
  VecOf<T> coeffs(8);
  for (int i = 0; i < 8; ++i) {
    coeffs[i] = span_cols.col(i).dot(amb);
    if (std::abs(value_of(coeffs[i])) > best) {
      best = std::abs(value_of(coeffs[i]));
      drop = i;
    }
  }
  MatOf<T> work(16, 8);
  work.col(0) = amb;
  int at = 1;
  for (int i = 0; i < 8; ++i)
    if (i != drop) work.col(at++) = span_cols.col(i);
  const MatOf<T> ortho = gram_schmidt(work, MatOf<T>(MatOf<T>::Identity(16, 16)));
  *vertical = ortho.rightCols(7);
}

}  // namespace

std::shared_ptr<ModelSpace> octonionic_hopf() {
  auto sg = std::make_shared<SphereGeometry>(15, 1.0);
  auto m = std::make_shared<ModelSpace>();
  m->name = "octonionic_hopf";
  m->dim = 15;
  m->hdim = 8;
  m->vdim = 7;
  m->ambient_dim = 16;
  m->atlas = sg->make_atlas();

  for (int c = 0; c < 2; ++c) {
    ChartGeometry cg;
    cg.g = MatMap([sg](const auto& x) { return sg->metric(x); });
    cg.g_inv = MatMap([sg](const auto& x) { return sg->inverse_metric(x); });
    cg.hframe = MatMap([sg, c](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::Scalar;
      const VecOf<T> amb = sg->embed(c, x);
      MatOf<T> h, v;
      octonionic_frames(amb, &h, &v);
      MatOf<T> out(15, 8);
      for (int i = 0; i < 8; ++i) out.col(i) = sg->pullback(c, x, VecOf<T>(h.col(i)));
      return out;
    });
    cg.vframe = MatMap([sg, c](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::Scalar;
      const VecOf<T> amb = sg->embed(c, x);
      MatOf<T> h, v;
      octonionic_frames(amb, &h, &v);
      MatOf<T> out(15, 7);
      for (int i = 0; i < 7; ++i) out.col(i) = sg->pullback(c, x, VecOf<T>(v.col(i)));
      return out;
    });
    cg.to_ambient = VecMap([sg, c](const auto& x) { return sg->embed(c, x); });
    cg.ambient_jacobian = MatMap([sg, c](const auto& x) { return sg->embed_jacobian(c, x); });
    m->charts.push_back(std::move(cg));
  }
  m->from_ambient_rule = [sg](const Vec& p) { return sg->point_from_ambient(p); };

  m->base = sphere_base("s8_half", 8, 0.5);
  auto sgb = std::make_shared<SphereGeometry>(8, 0.5);

  auto pi_amb_impl = [](const auto& p) {
    using V = std::decay_t<decltype(p)>;
    using T = typename V::Scalar;
    const Oct<T> x = Oct<T>::from_vec(p, 0);
    const Oct<T> y = Oct<T>::from_vec(p, 8);
    V out(9);
    out[0] = T(0.5) * (x.norm2() - y.norm2());
    VecOf<T> tail(8);
    (y * x.conj()).to_vec(tail);
    for (int i = 0; i < 8; ++i) out[i + 1] = tail[i];
    return out;
  };
  m->pi_ambient = VecMap(pi_amb_impl);
  m->dpi_ambient = BiVecMap([](const auto& p, const auto& v) {
    using V = std::decay_t<decltype(p)>;
    using T = typename V::Scalar;
    const Oct<T> x = Oct<T>::from_vec(p, 0);
    const Oct<T> y = Oct<T>::from_vec(p, 8);
    const Oct<T> a = Oct<T>::from_vec(v, 0);
    const Oct<T> b = Oct<T>::from_vec(v, 8);
    V out(9);
    VecOf<T> xv(8), yv(8), av(8), bv(8);
    x.to_vec(xv);
    y.to_vec(yv);
    a.to_vec(av);
    b.to_vec(bv);
    out[0] = xv.dot(av) - yv.dot(bv);
    VecOf<T> tail(8);
    (b * x.conj() + y * a.conj()).to_vec(tail);
    for (int i = 0; i < 8; ++i) out[i + 1] = tail[i];
    return out;
  });
  m->pi_chart.assign(2, std::vector<VecMap>(2));
  for (int c = 0; c < 2; ++c)
    for (int b = 0; b < 2; ++b)
      m->pi_chart[static_cast<size_t>(c)][static_cast<size_t>(b)] =
          VecMap([sg, sgb, c, b, pi_amb_impl](const auto& x) {
            return sgb->chart_coords(b, pi_amb_impl(sg->embed(c, x)));
          });

  m->declared = DeclaredProperties{true, true, true, false};
  m->sample_radius = 0.9;
  m->covector_scale = 2.0;
  m->interesting_points.push_back(Point{0, Vec::Zero(15)});
  m->finalize();
  return m;
}

}  // namespace geoflow
