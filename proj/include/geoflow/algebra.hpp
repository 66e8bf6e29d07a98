#pragma once

#include "geoflow/linalg.hpp"

namespace geoflow {

template <class T>
struct Quat {
  T w{}, x{}, y{}, z{};

  friend Quat operator+(const Quat& a, const Quat& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Quat operator-(const Quat& a, const Quat& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Quat operator*(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend Quat operator*(const T& c, const Quat& q) { return {c * q.w, c * q.x, c * q.y, c * q.z}; }
  Quat conj() const { return {w, T(-1) * x, T(-1) * y, T(-1) * z}; }
  T norm2() const { return w * w + x * x + y * y + z * z; }

  static Quat from_vec(const VecOf<T>& v, int offset = 0) {
    return {v[offset], v[offset + 1], v[offset + 2], v[offset + 3]};
  }
  void to_vec(VecOf<T>& v, int offset = 0) const {
    v[offset] = w;
    v[offset + 1] = x;
    v[offset + 2] = y;
    v[offset + 3] = z;
  }
};

// Octonions by the Cayley-Dickson doubling of the quaternions with the
// convention (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)). The resulting
// basis satisfies e1 e2 = e3, e1 e4 = e5; the multiplication table is pinned
// by unit tests.
template <class T>
struct Oct {
  Quat<T> a{}, b{};

  friend Oct operator+(const Oct& u, const Oct& v) { return {u.a + v.a, u.b + v.b}; }
  friend Oct operator-(const Oct& u, const Oct& v) { return {u.a - v.a, u.b - v.b}; }
  friend Oct operator*(const Oct& u, const Oct& v) {
    return {u.a * v.a - v.b.conj() * u.b, v.b * u.a + u.b * v.a.conj()};
  }
  friend Oct operator*(const T& c, const Oct& u) { return {c * u.a, c * u.b}; }
  Oct conj() const { return {a.conj(), T(-1) * b}; }
  T norm2() const { return a.norm2() + b.norm2(); }

  static Oct from_vec(const VecOf<T>& v, int offset = 0) {
    return {Quat<T>::from_vec(v, offset), Quat<T>::from_vec(v, offset + 4)};
  }
  void to_vec(VecOf<T>& v, int offset = 0) const {
    a.to_vec(v, offset);
    b.to_vec(v, offset + 4);
  }
  static Oct unit(int i) {
    VecOf<T> v = VecOf<T>::Zero(8);
    v[i] = T(1);
    return from_vec(v);
  }
};

using Quaternion = Quat<double>;
using Octonion = Oct<double>;

inline Vec quat_to_vec(const Quaternion& q) {
  Vec v(4);
  q.to_vec(v);
  return v;
}
inline Vec oct_to_vec(const Octonion& o) {
  Vec v(8);
  o.to_vec(v);
  return v;
}
inline Octonion octonion_multiply(const Octonion& u, const Octonion& v) { return u * v; }
inline Quaternion quaternion_multiply(const Quaternion& u, const Quaternion& v) { return u * v; }

}  // namespace geoflow
