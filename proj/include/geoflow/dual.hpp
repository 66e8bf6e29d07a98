#pragma once

#include <Eigen/Core>
#include <cmath>

namespace geoflow {

// Make the std scalar functions visible next to the Dual overloads so that
// unqualified calls in generic code resolve for both scalar types.
using std::abs;
using std::atan;
using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;
using std::tan;

// Charts in this library never exceed 15 coordinates (S^15), ambient
// embeddings never exceed 16.
inline constexpr int kMaxDim = 16;

// Forward-mode scalar carrying a value and a gradient with respect to all
// chart coordinates at once. The gradient vector is stack-allocated with
// capacity kMaxDim; a size-0 gradient means "identically zero" so constants
// cost nothing.
class Dual {
 public:
  using Grad = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

  double v = 0.0;
  Grad d;

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit by design
  Dual(double value, Grad grad) : v(value), d(std::move(grad)) {}

  static Dual seed(double value, int n, int direction) {
    Grad g = Grad::Zero(n);
    g[direction] = 1.0;
    return Dual(value, std::move(g));
  }

  double partial(int i) const { return d.size() == 0 ? 0.0 : d[i]; }

  Dual operator-() const {
    Dual r(-v);
    if (d.size()) r.d = -d;
    return r;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    add_scaled(o.d, 1.0);
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    add_scaled(o.d, -1.0);
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    // d(uv) = u' v + u v'
    if (d.size()) d *= o.v;
    add_scaled(o.d, v);
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.v;
    if (d.size()) d *= inv;
    v *= inv;
    add_scaled(o.d, -v * inv);
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }

  friend bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
  friend bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
  friend bool operator<=(const Dual& a, const Dual& b) { return a.v <= b.v; }
  friend bool operator>=(const Dual& a, const Dual& b) { return a.v >= b.v; }
  friend bool operator==(const Dual& a, const Dual& b) { return a.v == b.v; }
  friend bool operator!=(const Dual& a, const Dual& b) { return a.v != b.v; }

 private:
  void add_scaled(const Grad& g, double c) {
    if (g.size() == 0) return;
    if (d.size() == 0) {
      d = c * g;
    } else {
      d += c * g;
    }
  }

  friend Dual chain(double f, double df, const Dual& x);
};

// f(x) with known scalar derivative df at x.v.
inline Dual chain(double f, double df, const Dual& x) {
  Dual r(f);
  if (x.d.size()) r.d = df * x.d;
  return r;
}

inline Dual sqrt(const Dual& x) {
  const double s = std::sqrt(x.v);
  return chain(s, 0.5 / s, x);
}
inline Dual exp(const Dual& x) {
  const double e = std::exp(x.v);
  return chain(e, e, x);
}
inline Dual log(const Dual& x) { return chain(std::log(x.v), 1.0 / x.v, x); }
inline Dual sin(const Dual& x) { return chain(std::sin(x.v), std::cos(x.v), x); }
inline Dual cos(const Dual& x) { return chain(std::cos(x.v), -std::sin(x.v), x); }
inline Dual tan(const Dual& x) {
  const double t = std::tan(x.v);
  return chain(t, 1.0 + t * t, x);
}
inline Dual atan(const Dual& x) {
  return chain(std::atan(x.v), 1.0 / (1.0 + x.v * x.v), x);
}
inline Dual abs(const Dual& x) { return x.v < 0.0 ? -x : x; }
inline Dual pow(const Dual& x, double e) {
  return chain(std::pow(x.v, e), e * std::pow(x.v, e - 1.0), x);
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

}  // namespace geoflow

namespace Eigen {

template <>
struct NumTraits<geoflow::Dual> : NumTraits<double> {
  using Real = geoflow::Dual;
  using NonInteger = geoflow::Dual;
  using Nested = geoflow::Dual;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = geoflow::kMaxDim,
    MulCost = 2 * geoflow::kMaxDim,
  };
  static inline Real epsilon() { return geoflow::Dual(NumTraits<double>::epsilon()); }
  static inline Real dummy_precision() {
    return geoflow::Dual(NumTraits<double>::dummy_precision());
  }
};

}  // namespace Eigen
