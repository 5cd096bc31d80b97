#pragma once

#include <cmath>
#include <vector>

#include "bergman/cpoint.hpp"

namespace bergman {

// Mobius automorphism phi_a of the unit ball, via the projection formula
//   phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>),
// where P_a projects onto span{a}, Q_a = I - P_a and s_a = sqrt(1-|a|^2).
// Satisfies phi_a(0) = a, phi_a(a) = 0 and phi_a(phi_a(z)) = z.
// phi_0(z) = -z (the a -> 0 limit of the formula).
inline CPoint mobius(const CPoint& a, const CPoint& z) {
  require_same_dim(a, z);
  const double a2 = a.norm_sq();
  if (a2 >= 1.0) throw DomainError("mobius: |a| >= 1, automorphism undefined");
  if (a2 == 0.0) return Complex(-1.0) * z;

  const Complex za = herm_inner(z, a);
  const Complex denom = 1.0 - za;
  if (std::abs(denom) < kPoleGuard)
    throw DomainError("mobius: 1 - <z,a> vanishes");

  const double sa = std::sqrt(1.0 - a2);
  const Complex proj = za / a2;  // P_a z = proj * a
  CPoint r = a;
  for (int k = 0; k < r.dim(); ++k) {
    const Complex pz = proj * a[k];
    const Complex qz = z[k] - pz;
    r[k] = (a[k] - pz - sa * qz) / denom;
  }
  return r;
}

// beta(z,w) = (1/2) log (1+|phi_z(w)|)/(1-|phi_z(w)|) = atanh |phi_z(w)|
inline double bergman_metric(const CPoint& z, const CPoint& w) {
  if (z.norm() >= 1.0 - kBoundaryTol || w.norm() >= 1.0 - kBoundaryTol)
    throw DomainError("bergman_metric: boundary input");
  const double m = mobius(z, w).norm();
  if (m >= 1.0) throw DomainError("bergman_metric: infinite distance");
  return std::atanh(m);
}

// d(z,w) = |1 - <z,w>|^{1/2}, the nonisotropic metric
inline double noniso_dist(const CPoint& z, const CPoint& w) {
  return std::sqrt(std::abs(1.0 - herm_inner(z, w)));
}

// Bergman metric ball D(center, gamma)
struct BergmanBall {
  CPoint center;
  double radius;  // gamma, in Bergman-metric units

  BergmanBall(CPoint c, double gamma) : center(std::move(c)), radius(gamma) {
    if (!(radius > 0.0)) throw InvalidArgument("BergmanBall: radius <= 0");
    if (center.norm() >= 1.0)
      throw InvalidArgument("BergmanBall: center not in open ball");
  }

  // Euclidean radius of the pulled-back ball phi_c^{-1}(D) = D(0,gamma).
  double euclidean_radius() const {
    const double rho = std::tanh(radius);
    if (rho >= 1.0) throw InvalidArgument("BergmanBall: tanh(gamma) rounds to 1");
    return rho;
  }
};

// Carleson tube Q_r(zeta) = { z : d(z, zeta) < r } at a boundary point.
// The apex is snapped to exact unit norm on construction.
struct CarlesonTube {
  CPoint apex;
  double radius;

  CarlesonTube(CPoint zeta, double r) : apex(std::move(zeta)), radius(r) {
    if (!(radius > 0.0)) throw InvalidArgument("CarlesonTube: radius <= 0");
    const double nz = apex.norm();
    if (std::abs(nz - 1.0) > kBoundaryTol)
      throw InvalidArgument("CarlesonTube: apex not on the unit sphere");
    for (int k = 0; k < apex.dim(); ++k) apex[k] /= nz;
  }
};

inline bool in_bergman_ball(const CPoint& z, const BergmanBall& ball) {
  if (z.norm() >= 1.0) return false;
  return mobius(ball.center, z).norm() < ball.euclidean_radius();
}

inline bool in_tube(const CPoint& z, const CarlesonTube& tube) {
  return noniso_dist(z, tube.apex) < tube.radius;
}

// Unitary with first column u, extended by Gram-Schmidt from the standard
// basis. apply() maps e_1 -> u; useful for moving a tube apex to e_1.
class UnitaryFrame {
 public:
  explicit UnitaryFrame(const CPoint& u) {
    const int n = u.dim();
    cols_.push_back((1.0 / u.norm()) * u);
    for (int j = 0; j < n && static_cast<int>(cols_.size()) < n; ++j) {
      CPoint e = CPoint::zero(n);
      e[j] = 1.0;
      for (const CPoint& c : cols_) e = e - herm_inner(e, c) * c;
      const double nn = e.norm();
      if (nn > 1e-8) cols_.push_back((1.0 / nn) * e);
    }
    if (static_cast<int>(cols_.size()) != n)
      throw InternalError("UnitaryFrame: basis extension failed");
  }

  CPoint apply(const CPoint& z) const {
    CPoint r = CPoint::zero(z.dim());
    for (int k = 0; k < z.dim(); ++k) r = r + z[k] * cols_[k];
    return r;
  }

  CPoint apply_adjoint(const CPoint& z) const {
    CPoint r = CPoint::zero(z.dim());
    for (int k = 0; k < z.dim(); ++k) r[k] = herm_inner(z, cols_[k]);
    return r;
  }

 private:
  std::vector<CPoint> cols_;
};

}  // namespace bergman
