#pragma once

#include <cmath>
#include <vector>

#include "bergman/common.hpp"

namespace bergman {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

namespace detail {

// Jacobi polynomial P_m^{(a,b)}(x) and derivative, by the three-term
// recurrence. Valid for a, b > -1.
inline void jacobi_eval(int m, double a, double b, double x, double* p,
                        double* dp) {
  double pm1 = 1.0, pm = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  if (m == 0) {
    *p = pm1;
    *dp = 0.0;
    return;
  }
  for (int k = 2; k <= m; ++k) {
    const double k2ab = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (k2ab - 2.0);
    const double c2 = (k2ab - 1.0) * (a * a - b * b);
    const double c3 = (k2ab - 2.0) * (k2ab - 1.0) * k2ab;
    const double c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * k2ab;
    const double pk = ((c2 + c3 * x) * pm - c4 * pm1) / c1;
    pm1 = pm;
    pm = pk;
  }
  *p = pm;
  // dP_m via the standard identity in terms of P_m and P_{m-1}.
  const double m2ab = 2.0 * m + a + b;
  const double denom = m2ab * (1.0 - x * x);
  *dp = (m * (a - b - m2ab * x) * pm + 2.0 * (m + a) * (m + b) * pm1) / denom;
}

}  // namespace detail

// Gauss-Jacobi rule: integrates (1-x)^a (1+x)^b f(x) over [-1,1] exactly for
// polynomials f up to degree 2m-1. Nodes by Newton from Chebyshev-like
// starting guesses; weights from the classical Gamma-function formula.
inline Rule1D gauss_jacobi(int m, double a, double b) {
  if (m < 1) throw InvalidArgument("gauss_jacobi: order < 1");
  if (a <= -1.0 || b <= -1.0)
    throw InvalidArgument("gauss_jacobi: exponents must be > -1");
  Rule1D rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);

  const double logwf = std::log(2.0 * m + a + b + 2.0) -
                       std::log(m + a + b + 1.0) + std::lgamma(m + a + 1.0) +
                       std::lgamma(m + b + 1.0) - std::lgamma(m + a + b + 1.0) -
                       std::lgamma(m + 2.0) + (a + b) * std::log(2.0);
  const double wf = -std::exp(logwf);

  for (int i = 1; i <= m; ++i) {
    double x = std::cos(kPi * (0.5 * a + i - 0.25) / (0.5 * (1.0 + a + b) + m));
    double p = 1.0, dp = 1.0;
    for (int it = 0; it < 200; ++it) {
      detail::jacobi_eval(m, a, b, x, &p, &dp);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    detail::jacobi_eval(m, a, b, x, &p, &dp);
    double pn1, dpn1;
    detail::jacobi_eval(m + 1, a, b, x, &pn1, &dpn1);
    rule.nodes[i - 1] = x;
    rule.weights[i - 1] = wf / (pn1 * dp);
  }
  return rule;
}

inline Rule1D gauss_legendre(int m) { return gauss_jacobi(m, 0.0, 0.0); }

// Rule for int_0^1 (1-t)^a t^b f(t) dt, mapped from gauss_jacobi.
inline Rule1D jacobi_unit(int m, double a, double b) {
  Rule1D gj = gauss_jacobi(m, a, b);
  const double scale = std::pow(0.5, a + b + 1.0);
  Rule1D rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = 0.5 * (1.0 + gj.nodes[i]);
    rule.weights[i] = scale * gj.weights[i];
  }
  return rule;
}

// Plain rule on [lo, hi] (weight 1).
inline Rule1D legendre_on(int m, double lo, double hi) {
  Rule1D gl = gauss_legendre(m);
  Rule1D rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[i];
    rule.weights[i] = 0.5 * (hi - lo) * gl.weights[i];
  }
  return rule;
}

}  // namespace bergman
