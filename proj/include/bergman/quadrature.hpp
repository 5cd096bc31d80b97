#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/rng.hpp"
#include "bergman/rules.hpp"

namespace bergman {

// Normalizing constant of dv_alpha = c_alpha (1-|z|^2)^alpha dv, alpha > -1.
inline double c_alpha(int n, double alpha) {
  if (alpha <= -1.0) throw InvalidArgument("c_alpha: alpha <= -1");
  return std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0) -
                  std::lgamma(alpha + 1.0));
}

enum class MeasureKind { VAlpha, Tau, Sigma };

struct WeightedMeasure {
  MeasureKind kind = MeasureKind::VAlpha;
  double alpha = 0.0;

  static WeightedMeasure v_alpha(double a) {
    if (a <= -1.0) throw InvalidArgument("v_alpha requires alpha > -1");
    return {MeasureKind::VAlpha, a};
  }
  static WeightedMeasure tau() { return {MeasureKind::Tau, 0.0}; }
  static WeightedMeasure sigma() { return {MeasureKind::Sigma, 0.0}; }
};

struct QuadSpec {
  enum class Mode { ProductRule, MonteCarlo };

  Mode mode = Mode::ProductRule;
  int n = 1;                      // dimension
  int radial_order = 24;          // product rule: radial nodes
  int angular_order = 64;         // product rule: angular nodes
  long sample_count = 100000;     // monte carlo
  int strata = 64;                // monte carlo: radial strata
  std::uint64_t seed = 12345;

  static QuadSpec product(int n, int radial = 24, int angular = 64) {
    QuadSpec s;
    s.mode = Mode::ProductRule;
    s.n = n;
    s.radial_order = radial;
    s.angular_order = angular;
    s.validate();
    return s;
  }
  static QuadSpec monte_carlo(int n, long samples = 100000,
                              std::uint64_t seed = 12345, int strata = 64) {
    QuadSpec s;
    s.mode = Mode::MonteCarlo;
    s.n = n;
    s.sample_count = samples;
    s.seed = seed;
    s.strata = strata;
    s.validate();
    return s;
  }

  void validate() const {
    if (n < 1) throw InvalidArgument("QuadSpec: n < 1");
    if (mode == Mode::ProductRule && radial_order < 4)
      throw InvalidArgument("QuadSpec: radial_order < 4");
    if (mode == Mode::MonteCarlo && sample_count < 1000)
      throw InvalidArgument("QuadSpec: sample_count < 1000");
    if (strata < 1) throw InvalidArgument("QuadSpec: strata < 1");
  }

  QuadSpec with_seed(std::uint64_t s) const {
    QuadSpec q = *this;
    q.seed = s;
    return q;
  }
};

// A value with an error bar. stderr_val is 0 for deterministic rules.
struct Estimate {
  Complex value{};
  double stderr_val = 0.0;
  long samples_used = 0;
  bool diverged = false;

  double real() const { return value.real(); }
  double magnitude() const { return std::abs(value); }
};

using ScalarField = std::function<Complex(const CPoint&)>;

namespace detail {

inline CPoint sphere_point(Rng& rng, int n) {
  CPoint p = CPoint::zero(n);
  double nrm = 0.0;
  do {
    for (int k = 0; k < n; ++k) p[k] = rng.gaussian();
    nrm = p.norm();
  } while (nrm < 1e-12);
  return (1.0 / nrm) * p;
}

struct Accum {
  Complex sum{};
  double sum_sq = 0.0;  // sum of |v|^2
  long count = 0;
  void add(Complex v) {
    sum += v;
    sum_sq += std::norm(v);
    ++count;
  }
  Complex mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  double variance() const {
    if (count < 2) return 0.0;
    const double m2 = std::norm(sum) / static_cast<double>(count);
    return std::max(0.0, (sum_sq - m2) / static_cast<double>(count - 1));
  }
};

// Stratified MC over the unit ball with respect to the unweighted
// (normalized) volume v: |z|^2 = u^{1/n} with u stratified-uniform.
template <class F>
Estimate mc_ball(F&& weight_and_f, const QuadSpec& spec) {
  const int K = spec.strata;
  const long m = std::max<long>(1, (spec.sample_count + K - 1) / K);
  Complex total{};
  double var_total = 0.0;
  long used = 0;
  bool bad = false;
  for (int k = 0; k < K; ++k) {
    Rng rng(Rng::substream(spec.seed, static_cast<std::uint64_t>(k)));
    Accum acc;
    for (long i = 0; i < m; ++i) {
      const double u = (k + rng.uniform()) / K;
      const double t = std::pow(u, 1.0 / spec.n);
      CPoint z = std::sqrt(t) * sphere_point(rng, spec.n);
      const Complex v = weight_and_f(z, t);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        bad = true;
        continue;
      }
      acc.add(v);
    }
    total += acc.mean() / static_cast<double>(K);
    var_total += acc.variance() / (static_cast<double>(K) * K * acc.count);
    used += acc.count;
  }
  Estimate e;
  e.value = total;
  e.stderr_val = std::sqrt(var_total);
  e.samples_used = used;
  e.diverged = bad || std::abs(total) > 1e100;
  return e;
}

}  // namespace detail

// Integral of g over a Bergman ball against the invariant measure d(tau),
// computed on the pulled-back ball D(0,gamma) = {|u| < tanh gamma}: the map
// phi_c is a tau-isometry, so int_{D(c,g)} g dtau = int_{D(0,g)} g(phi_c(u)) dtau(u).
// n = 1 uses the hyperbolic radial density sinh(2s) exactly; n >= 2 samples the
// radial tau-law by its closed-form inverse CDF (stratified), giving honest
// error bars. tau(D(0,gamma)) = sinh(gamma)^{2n}.
template <class F>
Estimate integrate_bergman_ball(F&& g, const BergmanBall& ball,
                                const QuadSpec& spec) {
  spec.validate();
  const int n = ball.center.dim();
  const double gamma = ball.radius;
  ball.euclidean_radius();  // rejects gamma with tanh(gamma) == 1 in fp
  const bool centered = ball.center.norm_sq() == 0.0;
  auto transport = [&](const CPoint& u) {
    return centered ? u : mobius(ball.center, u);
  };

  if (spec.mode == QuadSpec::Mode::ProductRule) {
    if (n != 1)
      throw InvalidArgument("product rule only implemented for n = 1");
    const Rule1D rs = legendre_on(spec.radial_order, 0.0, gamma);
    const int M = spec.angular_order;
    Complex total{};
    for (int i = 0; i < rs.size(); ++i) {
      const double s = rs.nodes[i];
      const double r = std::tanh(s);
      Complex ang{};
      for (int j = 0; j < M; ++j) {
        const double th = kTwoPi * j / M;
        CPoint u{Complex(r * std::cos(th), r * std::sin(th))};
        ang += Complex(g(transport(u)));
      }
      total += rs.weights[i] * std::sinh(2.0 * s) * ang / static_cast<double>(M);
    }
    Estimate e;
    e.value = total;
    e.samples_used = rs.size() * M;
    return e;
  }

  const double sh2 = std::sinh(gamma) * std::sinh(gamma);
  const double tau_vol = std::pow(sh2, n);
  const int K = spec.strata;
  const long m = std::max<long>(1, (spec.sample_count + K - 1) / K);
  Complex total{};
  double var_total = 0.0;
  long used = 0;
  for (int k = 0; k < K; ++k) {
    Rng rng(Rng::substream(spec.seed, 0xb0b0 + static_cast<std::uint64_t>(k)));
    detail::Accum acc;
    for (long i = 0; i < m; ++i) {
      const double u = (k + rng.uniform()) / K;
      const double y = std::pow(u, 1.0 / n) * sh2;
      const double t = y / (1.0 + y);
      CPoint z = transport(std::sqrt(t) * detail::sphere_point(rng, n));
      acc.add(Complex(g(z)));
    }
    total += acc.mean() / static_cast<double>(K);
    var_total += acc.variance() / (static_cast<double>(K) * K * acc.count);
    used += acc.count;
  }
  Estimate e;
  e.value = tau_vol * total;
  e.stderr_val = tau_vol * std::sqrt(var_total);
  e.samples_used = used;
  return e;
}

// Integral of f over the ball (or sphere, for sigma) against the chosen
// measure. v_alpha: n = 1 product rule uses Gauss-Jacobi radial nodes for the
// (1-r^2)^alpha weight times equispaced angles; n >= 2 uses seeded stratified
// Monte Carlo. Global tau integrals are evaluated as a truncated sequence of
// Bergman-ball integrals and flagged divergent when the shell sums keep
// growing.
template <class F>
Estimate integrate_ball(F&& f, const WeightedMeasure& measure,
                        const QuadSpec& spec) {
  spec.validate();
  const int n = spec.n;

  if (measure.kind == MeasureKind::Tau) {
    // Hyperbolic shells between Bergman radii k-1 and k; the radial tau
    // density in s = atanh|z| is d/ds sinh(s)^{2n}.
    Estimate e;
    double max_shell = 0.0, last_shell = 0.0;
    const int max_shells = 14;  // tanh(k) reaches 1 in fp near k = 19
    for (int k = 1; k <= max_shells; ++k) {
      Estimate shell;
      if (spec.mode == QuadSpec::Mode::ProductRule) {
        if (n != 1)
          throw InvalidArgument("product rule only implemented for n = 1");
        const Rule1D rs = legendre_on(spec.radial_order, k - 1.0, k);
        const int M = spec.angular_order;
        Complex total{};
        for (int i = 0; i < rs.size(); ++i) {
          const double r = std::tanh(rs.nodes[i]);
          Complex ang{};
          for (int j = 0; j < M; ++j) {
            const double th = kTwoPi * j / M;
            ang += Complex(
                f(CPoint{Complex(r * std::cos(th), r * std::sin(th))}));
          }
          total += rs.weights[i] * std::sinh(2.0 * rs.nodes[i]) * ang /
                   static_cast<double>(M);
        }
        shell.value = total;
        shell.samples_used = rs.size() * M;
      } else {
        const double lo = std::pow(std::sinh(k - 1.0), 2.0 * n);
        const double hi = std::pow(std::sinh(static_cast<double>(k)), 2.0 * n);
        Rng rng(Rng::substream(spec.seed, 7000 + k));
        const long m = std::max<long>(1000, spec.sample_count / max_shells);
        detail::Accum acc;
        for (long i = 0; i < m; ++i) {
          const double y = std::pow(lo + rng.uniform() * (hi - lo), 1.0 / n);
          const double t = y / (1.0 + y);
          acc.add(Complex(f(std::sqrt(t) * detail::sphere_point(rng, n))));
        }
        shell.value = (hi - lo) * acc.mean();
        shell.stderr_val = (hi - lo) * std::sqrt(acc.variance() / acc.count);
        shell.samples_used = acc.count;
      }
      e.value += shell.value;
      e.stderr_val = std::hypot(e.stderr_val, shell.stderr_val);
      e.samples_used += shell.samples_used;
      last_shell = std::abs(shell.value);
      max_shell = std::max(max_shell, last_shell);
      if (std::abs(e.value) > 1e100) {
        e.diverged = true;
        return e;
      }
      if (last_shell < 1e-12 * std::max(1.0, std::abs(e.value)) && k >= 4)
        return e;
    }
    e.diverged = last_shell > 1e-3 * std::max(1e-300, max_shell);
    return e;
  }

  if (measure.kind == MeasureKind::Sigma) {
    if (n == 1) {
      const int M = std::max(spec.angular_order, 16);
      Complex total{};
      for (int j = 0; j < M; ++j) {
        const double th = kTwoPi * j / M;
        total += Complex(f(CPoint{Complex(std::cos(th), std::sin(th))}));
      }
      Estimate e;
      e.value = total / static_cast<double>(M);
      e.samples_used = M;
      return e;
    }
    Rng rng(spec.seed);
    detail::Accum acc;
    for (long i = 0; i < spec.sample_count; ++i)
      acc.add(Complex(f(detail::sphere_point(rng, n))));
    Estimate e;
    e.value = acc.mean();
    e.stderr_val = std::sqrt(acc.variance() / acc.count);
    e.samples_used = acc.count;
    return e;
  }

  const double alpha = measure.alpha;
  const double ca = c_alpha(n, alpha);

  if (spec.mode == QuadSpec::Mode::ProductRule) {
    if (n != 1)
      throw InvalidArgument("product rule only implemented for n = 1");
    const Rule1D rt = jacobi_unit(spec.radial_order, alpha, 0.0);
    const int M = spec.angular_order;
    Complex total{};
    for (int i = 0; i < rt.size(); ++i) {
      const double r = std::sqrt(rt.nodes[i]);
      Complex ang{};
      for (int j = 0; j < M; ++j) {
        const double th = kTwoPi * j / M;
        ang += Complex(f(CPoint{Complex(r * std::cos(th), r * std::sin(th))}));
      }
      total += rt.weights[i] * ang / static_cast<double>(M);
    }
    Estimate e;
    e.value = ca * total;
    e.samples_used = rt.size() * M;
    return e;
  }

  return detail::mc_ball(
      [&](const CPoint& z, double t) -> Complex {
        return ca * std::pow(1.0 - t, alpha) * Complex(f(z));
      },
      spec);
}

// ||z^J||^2 in L^2(dv_alpha): J! Gamma(n+alpha+1) / Gamma(n+|J|+alpha+1).
// Independent oracle for the quadrature engine (iterated Beta integrals).
inline double monomial_norm_exact(const std::vector<int>& J, int n,
                                  double alpha) {
  if (alpha <= -1.0) throw InvalidArgument("monomial_norm_exact: alpha <= -1");
  if (static_cast<int>(J.size()) != n)
    throw DimensionMismatch("monomial_norm_exact: |J| != n");
  double log_jfact = 0.0;
  long total = 0;
  for (int jk : J) {
    if (jk < 0) throw InvalidArgument("monomial_norm_exact: negative index");
    log_jfact += std::lgamma(jk + 1.0);
    total += jk;
  }
  return std::exp(log_jfact + std::lgamma(n + alpha + 1.0) -
                  std::lgamma(n + total + alpha + 1.0));
}

}  // namespace bergman
