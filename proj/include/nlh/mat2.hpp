// 2x2 complex matrices; the only matrix algebra the transform pipeline needs.
#pragma once
#include <complex>
#include <cmath>
#include <stdexcept>

namespace nlh {

using cplx = std::complex<double>;

struct Mat2 {
  cplx a11{1.0}, a12{0.0}, a21{0.0}, a22{1.0};

  static Mat2 identity() { return {}; }
  static Mat2 diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }
  // upper/lower unitriangular factors
  static Mat2 ut(cplx v) { return {1.0, v, 0.0, 1.0}; }
  static Mat2 lt(cplx v) { return {1.0, 0.0, v, 1.0}; }

  cplx det() const { return a11 * a22 - a12 * a21; }

  Mat2 inverse() const {
    cplx d = det();
    if (std::abs(d) == 0.0) throw std::domain_error("Mat2: singular matrix");
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
  }
  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
  }
  friend Mat2 operator*(cplx s, const Mat2& a) {
    return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
  }

  double max_abs() const {
    return std::max(std::max(std::abs(a11), std::abs(a12)),
                    std::max(std::abs(a21), std::abs(a22)));
  }
};

inline double mat_dist(const Mat2& a, const Mat2& b) { return (a - b).max_abs(); }

}  // namespace nlh
