#pragma once

#include <functional>
#include <optional>
#include <type_traits>

#include "geoflow/linalg.hpp"

namespace geoflow {

// Type-erased field evaluable on plain coordinates and on dual-number
// coordinates. Constructing from a generic lambda captures both paths; a
// double-only closure still works through the finite-difference fallback in
// the derivative helpers below.
class ScalarMap {
 public:
  ScalarMap() = default;
  template <class F, class = std::enable_if_t<std::is_invocable_r_v<double, F, const Vec&> &&
                                              std::is_invocable_r_v<Dual, F, const DVec&>>>
  ScalarMap(F f) : d_(f), j_(std::move(f)) {}
  static ScalarMap value_only(std::function<double(const Vec&)> f) {
    ScalarMap m;
    m.d_ = std::move(f);
    return m;
  }
  double operator()(const Vec& x) const { return d_(x); }
  Dual operator()(const DVec& x) const { return j_(x); }
  bool has_dual() const { return static_cast<bool>(j_); }
  explicit operator bool() const { return static_cast<bool>(d_); }

 private:
  std::function<double(const Vec&)> d_;
  std::function<Dual(const DVec&)> j_;
};

class VecMap {
 public:
  VecMap() = default;
  template <class F, class = std::enable_if_t<std::is_invocable_r_v<Vec, F, const Vec&> &&
                                              std::is_invocable_r_v<DVec, F, const DVec&>>>
  VecMap(F f) : d_(f), j_(std::move(f)) {}
  static VecMap value_only(std::function<Vec(const Vec&)> f) {
    VecMap m;
    m.d_ = std::move(f);
    return m;
  }
  static VecMap constant(const Vec& c) {
    return VecMap([c](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::Scalar;
      (void)x;
      return cast_vec<T>(c);
    });
  }
  Vec operator()(const Vec& x) const { return d_(x); }
  DVec operator()(const DVec& x) const { return j_(x); }
  bool has_dual() const { return static_cast<bool>(j_); }
  explicit operator bool() const { return static_cast<bool>(d_); }

 private:
  std::function<Vec(const Vec&)> d_;
  std::function<DVec(const DVec&)> j_;
};

class MatMap {
 public:
  MatMap() = default;
  template <class F, class = std::enable_if_t<std::is_invocable_r_v<Mat, F, const Vec&> &&
                                              std::is_invocable_r_v<DMat, F, const DVec&>>>
  MatMap(F f) : d_(f), j_(std::move(f)) {}
  static MatMap value_only(std::function<Mat(const Vec&)> f) {
    MatMap m;
    m.d_ = std::move(f);
    return m;
  }
  static MatMap constant(const Mat& c) {
    return MatMap([c](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::Scalar;
      (void)x;
      return cast_mat<T>(c);
    });
  }
  Mat operator()(const Vec& x) const { return d_(x); }
  DMat operator()(const DVec& x) const { return j_(x); }
  bool has_dual() const { return static_cast<bool>(j_); }
  explicit operator bool() const { return static_cast<bool>(d_); }

 private:
  std::function<Mat(const Vec&)> d_;
  std::function<DMat(const DVec&)> j_;
};

// Two-argument vector map (e.g. the differential of a submersion applied to
// an ambient vector), generic over the scalar.
class BiVecMap {
 public:
  BiVecMap() = default;
  template <class F,
            class = std::enable_if_t<std::is_invocable_r_v<Vec, F, const Vec&, const Vec&> &&
                                     std::is_invocable_r_v<DVec, F, const DVec&, const DVec&>>>
  BiVecMap(F f) : d_(f), j_(std::move(f)) {}
  Vec operator()(const Vec& x, const Vec& u) const { return d_(x, u); }
  DVec operator()(const DVec& x, const DVec& u) const { return j_(x, u); }
  explicit operator bool() const { return static_cast<bool>(d_); }

 private:
  std::function<Vec(const Vec&, const Vec&)> d_;
  std::function<DVec(const DVec&, const DVec&)> j_;
};

// Central-difference step h = cbrt(machine eps) * scale.
inline double fd_step(double coord_scale) {
  static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  return base * std::max(1.0, coord_scale);
}

Mat jacobian(const VecMap& f, const Vec& x);
Mat jacobian_fd(const VecMap& f, const Vec& x);
Vec gradient(const ScalarMap& f, const Vec& x);
Vec gradient_fd(const ScalarMap& f, const Vec& x);

struct MatWithPartials {
  Mat value;
  Tensor3 partials;
};
// Value and all first partials of a matrix field in one dual pass (or by
// central differences when no dual path exists).
MatWithPartials matrix_partials(const MatMap& f, const Vec& x);

struct VecWithJacobian {
  Vec value;
  Mat jacobian;
};
VecWithJacobian vec_with_jacobian(const VecMap& f, const Vec& x);

// Derivative-facility request/result for scalar fields.
struct JetResult {
  double value = 0.0;
  Vec first;            // gradient
  std::optional<Mat> second;  // symmetrized Hessian when order 2 requested
  double symmetry_defect = 0.0;
};

// order 1 or 2; guard (optional) must accept x and, for order 2 or the FD
// fallback, a box of width fd_step around it.
JetResult jet(const ScalarMap& f, const Vec& x, int order,
              const std::function<bool(const Vec&)>& guard = nullptr,
              double fd_symmetry_tol = 1e-6);

}  // namespace geoflow
