#pragma once

#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "bergman/common.hpp"

namespace bergman {

// A point of C^n. The universal argument type of the library; values are
// cheap to copy at the dimensions we care about (n = 1, 2).
class CPoint {
 public:
  CPoint() = default;
  explicit CPoint(std::vector<Complex> coords) : c_(std::move(coords)) {}
  CPoint(std::initializer_list<Complex> coords) : c_(coords) {}

  static CPoint zero(int n) { return CPoint(std::vector<Complex>(n)); }

  int dim() const { return static_cast<int>(c_.size()); }
  Complex& operator[](int k) { return c_[k]; }
  const Complex& operator[](int k) const { return c_[k]; }

  double norm_sq() const {
    double s = 0.0;
    for (const Complex& z : c_) s += std::norm(z);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  bool in_open_ball() const { return norm() < 1.0; }
  bool on_sphere(double tol = kBoundaryTol) const {
    return std::abs(norm() - 1.0) <= tol;
  }

  const std::vector<Complex>& coords() const { return c_; }

  friend bool operator==(const CPoint& a, const CPoint& b) {
    return a.c_ == b.c_;
  }

 private:
  std::vector<Complex> c_;
};

inline void require_same_dim(const CPoint& z, const CPoint& w) {
  if (z.dim() != w.dim())
    throw DimensionMismatch("points have different dimensions");
}

// <z,w> = z_1 conj(w_1) + ... + z_n conj(w_n)
inline Complex herm_inner(const CPoint& z, const CPoint& w) {
  require_same_dim(z, w);
  Complex s = 0.0;
  for (int k = 0; k < z.dim(); ++k) s += z[k] * std::conj(w[k]);
  return s;
}

inline CPoint operator+(const CPoint& a, const CPoint& b) {
  require_same_dim(a, b);
  CPoint r = a;
  for (int k = 0; k < r.dim(); ++k) r[k] += b[k];
  return r;
}

inline CPoint operator-(const CPoint& a, const CPoint& b) {
  require_same_dim(a, b);
  CPoint r = a;
  for (int k = 0; k < r.dim(); ++k) r[k] -= b[k];
  return r;
}

inline CPoint operator*(Complex s, const CPoint& a) {
  CPoint r = a;
  for (int k = 0; k < r.dim(); ++k) r[k] *= s;
  return r;
}

inline double dist(const CPoint& a, const CPoint& b) { return (a - b).norm(); }

}  // namespace bergman
