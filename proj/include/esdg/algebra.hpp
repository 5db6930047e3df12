#ifndef ESDG_ALGEBRA_HPP
#define ESDG_ALGEBRA_HPP

#include <array>
#include <cmath>

namespace esdg {

using Vec3 = std::array<double, 3>;

//! Dense 3x3 matrix, row major. Only the handful of operations the
//! boundary-condition algebra needs.
struct Mat3 {
  std::array<double, 9> a{};

  double& operator()(int i, int j) { return a[3 * i + j]; }
  double operator()(int i, int j) const { return a[3 * i + j]; }

  Mat3 transpose() const {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    return t;
  }
};

inline Vec3 operator*(const Mat3& m, const Vec3& x) {
  Vec3 y{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) y[i] += m(i, j) * x[j];
  return y;
}

inline Mat3 operator*(const Mat3& l, const Mat3& r) {
  Mat3 p;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += l(i, k) * r(k, j);
      p(i, j) = s;
    }
  return p;
}

inline Mat3 diag3(const Vec3& d) {
  Mat3 m;
  m(0, 0) = d[0];
  m(1, 1) = d[1];
  m(2, 2) = d[2];
  return m;
}

inline double dot(const Vec3& x, const Vec3& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

inline Vec3 operator+(const Vec3& x, const Vec3& y) {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2]};
}

inline Vec3 operator-(const Vec3& x, const Vec3& y) {
  return {x[0] - y[0], x[1] - y[1], x[2] - y[2]};
}

inline Vec3 operator*(double s, const Vec3& x) {
  return {s * x[0], s * x[1], s * x[2]};
}

}  // namespace esdg

#endif
