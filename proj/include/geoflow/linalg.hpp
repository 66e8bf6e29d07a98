#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "geoflow/dual.hpp"
#include "geoflow/errors.hpp"

namespace geoflow {

// Stack-capped dynamic vectors/matrices; dimensions in this library never
// exceed kMaxDim so no evaluation path heap-allocates.
template <class T>
using VecOf = Eigen::Matrix<T, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
template <class T>
using MatOf = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

using Vec = VecOf<double>;
using Mat = MatOf<double>;
using DVec = VecOf<Dual>;
using DMat = MatOf<Dual>;

inline double pivot_magnitude(double x) { return std::abs(x); }
inline double pivot_magnitude(const Dual& x) { return std::abs(x.v); }

// Gauss-Jordan solve with partial pivoting, generic over the scalar so the
// same code runs on plain doubles and dual numbers.
template <class T>
MatOf<T> solve_linear(MatOf<T> a, MatOf<T> rhs) {
  const int n = static_cast<int>(a.rows());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = pivot_magnitude(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double m = pivot_magnitude(a(r, col));
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (!(best > 0.0)) throw FrameDegenerate("solve_linear: singular matrix");
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      rhs.row(piv).swap(rhs.row(col));
    }
    const T inv = T(1.0) / a(col, col);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = a(r, col) * inv;
      if (pivot_magnitude(f) == 0.0) continue;
      a.row(r) -= f * a.row(col);
      rhs.row(r) -= f * rhs.row(col);
    }
    a.row(col) *= inv;
    rhs.row(col) *= inv;
  }
  return rhs;
}

template <class T>
VecOf<T> solve_linear(const MatOf<T>& a, const VecOf<T>& b) {
  MatOf<T> rhs(b.size(), 1);
  rhs.col(0) = b;
  return solve_linear(a, rhs).col(0);
}

template <class T>
MatOf<T> inverse(const MatOf<T>& a) {
  MatOf<T> id = MatOf<T>::Identity(a.rows(), a.cols());
  return solve_linear(MatOf<T>(a), id);
}

// Modified Gram-Schmidt on the columns of a, orthonormal w.r.t. the inner
// product x^T gram y. Columns below the rank cutoff are dropped.
template <class T>
MatOf<T> gram_schmidt(const MatOf<T>& a, const MatOf<T>& gram, double rank_tol = 1e-10) {
  MatOf<T> q(a.rows(), a.cols());
  int kept = 0;
  for (int j = 0; j < a.cols(); ++j) {
    VecOf<T> col = a.col(j);
    for (int i = 0; i < kept; ++i) {
      const T proj = (q.col(i).transpose() * gram * col)(0, 0);
      col -= proj * q.col(i);
    }
    const T nrm2 = (col.transpose() * gram * col)(0, 0);
    if (value_of(nrm2) > rank_tol) {
      q.col(kept++) = col / sqrt(nrm2);
    }
  }
  q.conservativeResize(Eigen::NoChange, kept);
  return q;
}

inline DVec seed_dual(const Vec& x) {
  DVec xd(x.size());
  for (int i = 0; i < x.size(); ++i) xd[i] = Dual::seed(x[i], static_cast<int>(x.size()), i);
  return xd;
}

inline Vec values(const DVec& xd) {
  Vec x(xd.size());
  for (int i = 0; i < xd.size(); ++i) x[i] = xd[i].v;
  return x;
}

inline Mat values(const DMat& md) {
  Mat m(md.rows(), md.cols());
  for (int i = 0; i < md.rows(); ++i)
    for (int j = 0; j < md.cols(); ++j) m(i, j) = md(i, j).v;
  return m;
}

template <class T>
MatOf<T> cast_mat(const Mat& m) {
  if constexpr (std::is_same_v<T, double>) {
    return m;
  } else {
    MatOf<T> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) r(i, j) = T(m(i, j));
    return r;
  }
}

template <class T>
VecOf<T> cast_vec(const Vec& v) {
  if constexpr (std::is_same_v<T, double>) {
    return v;
  } else {
    VecOf<T> r(v.size());
    for (int i = 0; i < v.size(); ++i) r[i] = T(v[i]);
    return r;
  }
}

// Third-order object d[k](i,j) = d_k M_ij, used for metric and cometric
// derivatives and projector derivatives.
struct Tensor3 {
  std::vector<Mat> d;
  const Mat& operator[](int k) const { return d[k]; }
  int size() const { return static_cast<int>(d.size()); }
  // Contraction sum_k x_k d[k]
  Mat contract(const Vec& x) const {
    Mat r = Mat::Zero(d[0].rows(), d[0].cols());
    for (int k = 0; k < size(); ++k) r += x[k] * d[k];
    return r;
  }
};

}  // namespace geoflow
