#include "geoflow/maps.hpp"

#include "geoflow/errors.hpp"

namespace geoflow {

Mat jacobian_fd(const VecMap& f, const Vec& x) {
  const int n = static_cast<int>(x.size());
  Vec fx = f(x);
  Mat j(fx.size(), n);
  for (int k = 0; k < n; ++k) {
    const double h = fd_step(std::abs(x[k]));
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    j.col(k) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return j;
}

Mat jacobian(const VecMap& f, const Vec& x) {
  if (!f.has_dual()) return jacobian_fd(f, x);
  const DVec y = f(seed_dual(x));
  const int n = static_cast<int>(x.size());
  Mat j(y.size(), n);
  for (int i = 0; i < y.size(); ++i)
    for (int k = 0; k < n; ++k) j(i, k) = y[i].partial(k);
  return j;
}

Vec gradient_fd(const ScalarMap& f, const Vec& x) {
  const int n = static_cast<int>(x.size());
  Vec g(n);
  for (int k = 0; k < n; ++k) {
    const double h = fd_step(std::abs(x[k]));
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    g[k] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

Vec gradient(const ScalarMap& f, const Vec& x) {
  if (!f.has_dual()) return gradient_fd(f, x);
  const Dual y = f(seed_dual(x));
  const int n = static_cast<int>(x.size());
  Vec g(n);
  for (int k = 0; k < n; ++k) g[k] = y.partial(k);
  return g;
}

MatWithPartials matrix_partials(const MatMap& f, const Vec& x) {
  const int n = static_cast<int>(x.size());
  MatWithPartials out;
  if (f.has_dual()) {
    const DMat y = f(seed_dual(x));
    out.value = values(y);
    out.partials.d.assign(n, Mat::Zero(y.rows(), y.cols()));
    for (int i = 0; i < y.rows(); ++i)
      for (int j = 0; j < y.cols(); ++j)
        for (int k = 0; k < n; ++k) out.partials.d[k](i, j) = y(i, j).partial(k);
    return out;
  }
  out.value = f(x);
  out.partials.d.assign(n, Mat::Zero(out.value.rows(), out.value.cols()));
  for (int k = 0; k < n; ++k) {
    const double h = fd_step(std::abs(x[k]));
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    out.partials.d[k] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return out;
}

VecWithJacobian vec_with_jacobian(const VecMap& f, const Vec& x) {
  VecWithJacobian out;
  if (f.has_dual()) {
    const DVec y = f(seed_dual(x));
    out.value = values(y);
    out.jacobian.resize(y.size(), x.size());
    for (int i = 0; i < y.size(); ++i)
      for (int k = 0; k < x.size(); ++k) out.jacobian(i, k) = y[i].partial(k);
    return out;
  }
  out.value = f(x);
  out.jacobian = jacobian_fd(f, x);
  return out;
}

JetResult jet(const ScalarMap& f, const Vec& x, int order,
              const std::function<bool(const Vec&)>& guard, double fd_symmetry_tol) {
  if (order < 1 || order > 2) throw DifferentiationError("jet: order must be 1 or 2");
  const int n = static_cast<int>(x.size());
  if (guard && !guard(x)) throw OutOfChart("jet: point outside chart safe region");
  const bool needs_box = order == 2 || !f.has_dual();
  if (needs_box && guard) {
    for (int k = 0; k < n; ++k) {
      const double h = fd_step(std::abs(x[k]));
      Vec xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      if (!guard(xp) || !guard(xm))
        throw OutOfChart("jet: finite-difference stencil leaves chart safe region");
    }
  }

  JetResult r;
  r.value = f(x);
  r.first = gradient(f, x);

  if (order == 2) {
    // Central differences of the (exact when available) gradient.
    Mat h2(n, n);
    for (int k = 0; k < n; ++k) {
      const double h = fd_step(std::abs(x[k]));
      Vec xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      h2.col(k) = (gradient(f, xp) - gradient(f, xm)) / (2.0 * h);
    }
    r.symmetry_defect = (h2 - h2.transpose()).cwiseAbs().maxCoeff();
    if (r.symmetry_defect > fd_symmetry_tol)
      throw DifferentiationError("jet: mixed second partials asymmetric beyond tolerance");
    r.second = 0.5 * (h2 + Mat(h2.transpose()));
  }
  return r;
}

}  // namespace geoflow
