#pragma once

#include <cmath>

namespace bruss {

/// Dense 2x2 real matrix, row-major. Everything here is small enough that
/// value semantics and inline arithmetic are the right tool.
struct Mat2 {
  double m00 = 0.0, m01 = 0.0;
  double m10 = 0.0, m11 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  constexpr double trace() const { return m00 + m11; }
  constexpr double det() const { return m00 * m11 - m01 * m10; }
};

constexpr Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

constexpr Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

constexpr Mat2 operator*(double c, const Mat2& a) {
  return {c * a.m00, c * a.m01, c * a.m10, c * a.m11};
}

constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

/// Largest real part among the eigenvalues of a real 2x2 matrix.
inline double max_real_eigenvalue(const Mat2& m) {
  const double tr = m.trace();
  const double disc = tr * tr - 4.0 * m.det();
  if (disc >= 0.0) return 0.5 * (tr + std::sqrt(disc));
  return 0.5 * tr;  // complex pair, common real part
}

}  // namespace bruss
