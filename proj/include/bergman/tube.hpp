#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "bergman/quadrature.hpp"

namespace bergman {

// Quadrature over Carleson tubes Q_r(zeta) against dv_alpha.
//
// After rotating the apex to e_1, membership depends on z_1 alone:
// |1 - z_1| < r^2. Writing z_1 = 1 - s e^{i psi}, the tube is
// { s < S, cos(psi) > s/2 } with S = min(r^2, 2), and
//   (1 - |z_1|^2) = s (2 cos(psi) - s).
// For n = 1 this yields an exact product rule with Jacobi weights
// s^{1+alpha} radially and (2 cos psi - s)^alpha = 4 sin(psi*(1+y)/2)
// sin(psi*(1-y)/2) across (psi* = arccos(s/2), psi = psi* y). Otherwise a
// seeded proposal on the (s, psi) disk with stratified s plus rejection by
// the d-membership predicate.

namespace detail {

struct TubeFrame {
  UnitaryFrame frame;
  double S;
  explicit TubeFrame(const CarlesonTube& tube)
      : frame(tube.apex), S(std::min(tube.radius * tube.radius, 2.0)) {}
  CPoint lift(Complex z1, const CPoint& rest) const {
    CPoint zp = rest;  // rest has full dim, slot 0 ignored
    zp[0] = z1;
    return frame.apply(zp);
  }
};

}  // namespace detail

// Deterministic rule nodes for int_{Q} g dv_alpha, n = 1 only.
// Returns pairs (node, weight) with sum_i w_i g(node_i) ~= integral.
inline std::vector<std::pair<CPoint, double>> tube_rule_nodes(
    const CarlesonTube& tube, double alpha, int radial_order,
    int angular_order) {
  if (tube.apex.dim() != 1)
    throw InvalidArgument("tube_rule_nodes: only n = 1");
  const double S = std::min(tube.radius * tube.radius, 2.0);
  const double ca = c_alpha(1, alpha);
  const Rule1D rs = jacobi_unit(radial_order, 0.0, 1.0 + alpha);  // t^{1+a}
  const Rule1D ry = jacobi_unit(angular_order, alpha, 0.0);       // (1-y)^a
  const Complex zeta = tube.apex[0];

  std::vector<std::pair<CPoint, double>> out;
  out.reserve(2 * rs.size() * ry.size());
  for (int i = 0; i < rs.size(); ++i) {
    const double s = S * rs.nodes[i];
    const double cs = std::min(1.0, s / 2.0);
    const double psi_star = std::acos(cs);
    if (psi_star <= 0.0) continue;
    for (int j = 0; j < ry.size(); ++j) {
      const double y = ry.nodes[j];
      const double psi = psi_star * y;
      // (2 cos psi - s)^alpha with the (1-y)^alpha Jacobi factor split off
      const double half_sum = std::sin(psi_star * (1.0 + y) / 2.0);
      const double half_diff_over =
          (1.0 - y) > 1e-12
              ? std::sin(psi_star * (1.0 - y) / 2.0) / (1.0 - y)
              : psi_star / 2.0;
      const double smooth = std::pow(4.0 * half_sum * half_diff_over, alpha);
      const double w_common = (ca / kPi) * std::pow(S, 2.0 + alpha) *
                              rs.weights[i] * ry.weights[j] * psi_star * smooth;
      for (int sign : {+1, -1}) {
        const Complex w1 = s * Complex(std::cos(psi), sign * std::sin(psi));
        out.emplace_back(CPoint{zeta * (1.0 - w1)}, w_common);
      }
    }
  }
  return out;
}

// int_{Q_r(zeta)} g dv_alpha.
template <class F>
Estimate tube_integrate(F&& g, const CarlesonTube& tube, double alpha,
                        const QuadSpec& spec) {
  spec.validate();
  const int n = tube.apex.dim();

  if (spec.mode == QuadSpec::Mode::ProductRule) {
    if (n != 1) throw InvalidArgument("tube product rule only for n = 1");
    Complex total{};
    const auto nodes =
        tube_rule_nodes(tube, alpha, spec.radial_order, spec.angular_order);
    for (const auto& [z, w] : nodes) total += w * Complex(g(z));
    Estimate e;
    e.value = total;
    e.samples_used = static_cast<long>(nodes.size());
    return e;
  }

  const detail::TubeFrame tf(tube);
  const double S = tf.S;
  const double ca = c_alpha(n, alpha);
  const int K = spec.strata;
  const long m = std::max<long>(1, (spec.sample_count + K - 1) / K);

  Complex total{};
  double var_total = 0.0;
  long used = 0;
  for (int k = 0; k < K; ++k) {
    Rng rng(Rng::substream(spec.seed, 0x7e11 + static_cast<std::uint64_t>(k)));
    detail::Accum acc;
    for (long i = 0; i < m; ++i) {
      const double u = (k + rng.uniform()) / K;  // stratified |w|^2 / S^2
      const double s = S * std::sqrt(u);
      const double psi = kPi * (2.0 * rng.uniform() - 1.0);
      const Complex z1 = 1.0 - s * Complex(std::cos(psi), std::sin(psi));
      const double t1 = std::norm(z1);
      if (t1 >= 1.0) {
        acc.add(0.0);
        continue;
      }
      CPoint rest = CPoint::zero(n);
      double weight = ca * S * S;
      if (n >= 2) {
        // z' uniform on the ball of radius sqrt(1-|z_1|^2) in C^{n-1}
        const double rho2 = 1.0 - t1;
        const double tr = rho2 * std::pow(rng.uniform(), 1.0 / (n - 1));
        CPoint dir = detail::sphere_point(rng, n - 1);
        for (int q = 1; q < n; ++q) rest[q] = std::sqrt(tr) * dir[q - 1];
        // n!/pi^n measure factor against the two proposal densities
        weight *= n * std::pow(rho2, n - 1.0);
      }
      CPoint z = tf.lift(z1, rest);
      if (!in_tube(z, tube)) {
        acc.add(0.0);
        continue;
      }
      const double omz = 1.0 - z.norm_sq();
      acc.add(weight * std::pow(omz, alpha) * Complex(g(z)));
    }
    total += acc.mean() / static_cast<double>(K);
    var_total += acc.variance() / (static_cast<double>(K) * K * acc.count);
    used += acc.count;
  }
  Estimate e;
  e.value = total;
  e.stderr_val = std::sqrt(var_total);
  e.samples_used = used;
  return e;
}

// v_alpha(Q_r(zeta)). Exactly 1 once r^2 >= 2, since |1 - <z,zeta>| < 2 on
// the ball.
inline Estimate tube_volume(const CarlesonTube& tube, double alpha,
                            const QuadSpec& spec) {
  if (tube.radius * tube.radius >= 2.0) {
    Estimate e;
    e.value = 1.0;
    return e;
  }
  return tube_integrate([](const CPoint&) { return 1.0; }, tube, alpha, spec);
}

// Least-squares slope of log v(r) against log r; used for the volume laws.
inline double loglog_slope(const std::vector<double>& radii,
                           const std::vector<double>& values) {
  if (radii.size() != values.size() || radii.size() < 2)
    throw InvalidArgument("loglog_slope: need matched samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(values[i] > 0.0)) continue;
    const double x = std::log(radii[i]), y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) throw InvalidArgument("loglog_slope: too few positive values");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace bergman
