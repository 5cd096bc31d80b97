#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "bergman/quadrature.hpp"

namespace bergman {

namespace detail {

// z^w for real w, with a fast path for small integer exponents (the kernel
// exponents b = n+1, n+2, 2n+2 dominate the hot loops).
inline Complex cpow(Complex z, double w) {
  const double ri = std::nearbyint(w);
  if (ri == w && ri >= 0.0 && ri <= 16.0) {
    Complex r = 1.0;
    int k = static_cast<int>(ri);
    Complex base = z;
    while (k > 0) {
      if (k & 1) r *= base;
      base *= base;
      k >>= 1;
    }
    return r;
  }
  return std::pow(z, w);
}

}  // namespace detail

struct Monomial {
  Complex coeff;
  std::vector<int> J;

  int degree() const { return std::accumulate(J.begin(), J.end(), 0); }
};

// coeff * (1-|a|^2)^s / (1 - <z,a>)^b with the pole a strictly inside the ball
struct KernelTerm {
  Complex coeff;
  CPoint pole;
  double b;
  double s;

  double amplitude() const {
    return std::pow(1.0 - pole.norm_sq(), s);
  }
};

// Finite sum of monomials and kernel-type rational terms; closed under the
// radial derivative and coordinate differentiation.
class HoloFunc {
 public:
  explicit HoloFunc(int n) : n_(n) {
    if (n < 1) throw InvalidArgument("HoloFunc: dimension < 1");
  }

  static HoloFunc zero(int n) { return HoloFunc(n); }

  static HoloFunc constant(int n, Complex c) {
    HoloFunc f(n);
    if (c != 0.0) f.monos_.push_back({c, std::vector<int>(n, 0)});
    return f;
  }

  static HoloFunc monomial(int n, std::vector<int> J, Complex coeff = 1.0) {
    if (static_cast<int>(J.size()) != n)
      throw DimensionMismatch("HoloFunc::monomial: |J| != n");
    for (int j : J)
      if (j < 0) throw InvalidArgument("HoloFunc::monomial: negative index");
    HoloFunc f(n);
    if (coeff != 0.0) f.monos_.push_back({coeff, std::move(J)});
    return f;
  }

  static HoloFunc coordinate(int n, int k) {
    std::vector<int> J(n, 0);
    J.at(k) = 1;
    return monomial(n, std::move(J));
  }

  static HoloFunc kernel(CPoint pole, double b, double s, Complex coeff = 1.0) {
    if (pole.norm() >= 1.0)
      throw InvalidArgument("HoloFunc::kernel: pole not inside the ball");
    if (!(b > 0.0)) throw InvalidArgument("HoloFunc::kernel: b <= 0");
    HoloFunc f(pole.dim());
    if (coeff != 0.0) f.kernels_.push_back({coeff, std::move(pole), b, s});
    return f;
  }

  int dim() const { return n_; }
  const std::vector<Monomial>& monomials() const { return monos_; }
  const std::vector<KernelTerm>& kernel_terms() const { return kernels_; }
  bool is_polynomial() const { return kernels_.empty(); }
  bool is_zero() const { return monos_.empty() && kernels_.empty(); }

  Complex eval(const CPoint& z) const {
    if (z.dim() != n_) throw DimensionMismatch("HoloFunc::eval: bad dimension");
    Complex total = 0.0;
    for (const Monomial& m : monos_) {
      Complex v = m.coeff;
      for (int k = 0; k < n_; ++k)
        for (int rep = 0; rep < m.J[k]; ++rep) v *= z[k];
      total += v;
    }
    for (const KernelTerm& kt : kernels_) {
      const Complex denom = 1.0 - herm_inner(z, kt.pole);
      if (std::abs(denom) < kPoleGuard)
        throw DomainError("HoloFunc::eval: pole-adjacent evaluation");
      total += kt.coeff * kt.amplitude() / detail::cpow(denom, kt.b);
    }
    return total;
  }

  Complex value_at_zero() const { return eval(CPoint::zero(n_)); }

  HoloFunc operator+(const HoloFunc& other) const {
    if (other.n_ != n_) throw DimensionMismatch("HoloFunc: mixed dimensions");
    HoloFunc r = *this;
    r.monos_.insert(r.monos_.end(), other.monos_.begin(), other.monos_.end());
    r.kernels_.insert(r.kernels_.end(), other.kernels_.begin(),
                      other.kernels_.end());
    return r;
  }

  HoloFunc scaled(Complex c) const {
    HoloFunc r(n_);
    if (c == 0.0) return r;
    r = *this;
    for (Monomial& m : r.monos_) m.coeff *= c;
    for (KernelTerm& kt : r.kernels_) kt.coeff *= c;
    return r;
  }

  // f - f(0); the reference object of the area-function equivalences.
  HoloFunc minus_value_at_zero() const {
    return *this + constant(n_, -value_at_zero());
  }

  void push_monomial(Monomial m) {
    if (static_cast<int>(m.J.size()) != n_)
      throw DimensionMismatch("HoloFunc: monomial dimension");
    monos_.push_back(std::move(m));
  }
  void push_kernel(KernelTerm kt) {
    if (kt.pole.dim() != n_) throw DimensionMismatch("HoloFunc: pole dimension");
    kernels_.push_back(std::move(kt));
  }

 private:
  int n_;
  std::vector<Monomial> monos_;
  std::vector<KernelTerm> kernels_;
};

inline Complex eval(const HoloFunc& f, const CPoint& z) { return f.eval(z); }

// d/dz_k as a symbolic member of the family.
inline HoloFunc partial_derivative(const HoloFunc& f, int k) {
  HoloFunc r(f.dim());
  for (const Monomial& m : f.monomials()) {
    if (m.J[k] == 0) continue;
    Monomial d = m;
    d.coeff *= static_cast<double>(m.J[k]);
    d.J[k] -= 1;
    r.push_monomial(std::move(d));
  }
  for (const KernelTerm& kt : f.kernel_terms()) {
    const Complex ak = std::conj(kt.pole[k]);
    if (ak == 0.0) continue;
    r.push_kernel({kt.coeff * kt.b * ak, kt.pole, kt.b + 1.0, kt.s});
  }
  return r;
}

// R f = sum_k z_k df/dz_k. Monomials scale by their degree; a kernel term
// maps to the two-term combination obtained from <z,a> = 1 - (1 - <z,a>).
inline HoloFunc radial_derivative(const HoloFunc& f) {
  HoloFunc r(f.dim());
  for (const Monomial& m : f.monomials()) {
    const int deg = m.degree();
    if (deg == 0) continue;
    Monomial d = m;
    d.coeff *= static_cast<double>(deg);
    r.push_monomial(std::move(d));
  }
  for (const KernelTerm& kt : f.kernel_terms()) {
    r.push_kernel({kt.coeff * kt.b, kt.pole, kt.b + 1.0, kt.s});
    r.push_kernel({-kt.coeff * kt.b, kt.pole, kt.b, kt.s});
  }
  return r;
}

inline HoloFunc radial_derivative_k(const HoloFunc& f, int k) {
  if (k < 0) throw InvalidArgument("radial_derivative_k: k < 0");
  HoloFunc r = f;
  for (int i = 0; i < k; ++i) r = radial_derivative(r);
  return r;
}

// (df/dz_1, ..., df/dz_n) at z.
inline CPoint gradient(const HoloFunc& f, const CPoint& z) {
  if (z.dim() != f.dim()) throw DimensionMismatch("gradient: bad dimension");
  const int n = f.dim();
  CPoint g = CPoint::zero(n);
  for (const Monomial& m : f.monomials()) {
    for (int k = 0; k < n; ++k) {
      if (m.J[k] == 0) continue;
      Complex v = m.coeff * static_cast<double>(m.J[k]);
      for (int q = 0; q < n; ++q) {
        const int e = m.J[q] - (q == k ? 1 : 0);
        for (int rep = 0; rep < e; ++rep) v *= z[q];
      }
      g[k] += v;
    }
  }
  for (const KernelTerm& kt : f.kernel_terms()) {
    const Complex denom = 1.0 - herm_inner(z, kt.pole);
    if (std::abs(denom) < kPoleGuard)
      throw DomainError("gradient: pole-adjacent evaluation");
    const Complex common =
        kt.coeff * kt.amplitude() * kt.b / detail::cpow(denom, kt.b + 1.0);
    for (int k = 0; k < n; ++k) g[k] += common * std::conj(kt.pole[k]);
  }
  return g;
}

// |grad~ f(z)| via |grad~ f|^2 = (1-|z|^2)(|grad f|^2 - |Rf|^2).
inline double invariant_gradient_norm(const HoloFunc& f, const CPoint& z) {
  const CPoint g = gradient(f, z);
  Complex rf = 0.0;
  for (int k = 0; k < z.dim(); ++k) rf += z[k] * g[k];
  const double g2 = g.norm_sq();
  const double radicand = (1.0 - z.norm_sq()) * (g2 - std::norm(rf));
  if (radicand < -1e-12 * std::max(1.0, g2))
    throw InternalError("invariant_gradient_norm: negative radicand");
  return std::sqrt(std::max(0.0, radicand));
}

// Finite-difference oracle: |grad(f o phi_z)(0)| by central differences along
// each coordinate (f o phi_z is holomorphic, so the real-direction derivative
// is the complex one).
inline double invariant_gradient_fd(const HoloFunc& f, const CPoint& z,
                                    double h = 1e-5) {
  if (h < 1e-7 || h > 1e-4)
    throw InvalidArgument("invariant_gradient_fd: h outside [1e-7, 1e-4]");
  const int n = f.dim();
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    CPoint wp = CPoint::zero(n), wm = CPoint::zero(n);
    wp[k] = h;
    wm[k] = -h;
    const Complex d =
        (f.eval(mobius(z, wp)) - f.eval(mobius(z, wm))) / (2.0 * h);
    sum += std::norm(d);
  }
  return std::sqrt(sum);
}

// (I+R)^s on polynomials: scales the homogeneous degree-k part by (1+k)^s.
inline HoloFunc fractional_shift(const HoloFunc& f, double s) {
  if (!f.is_polynomial())
    throw InvalidArgument("fractional_shift: kernel terms present");
  HoloFunc r(f.dim());
  for (const Monomial& m : f.monomials()) {
    Monomial scaled = m;
    scaled.coeff *= std::pow(1.0 + m.degree(), s);
    r.push_monomial(std::move(scaled));
  }
  return r;
}

// K^alpha(z,w) = (1 - <z,w>)^{-(n+1+alpha)}
inline Complex bergman_kernel(double alpha, const CPoint& z, const CPoint& w) {
  if (alpha <= -1.0) throw InvalidArgument("bergman_kernel: alpha <= -1");
  require_same_dim(z, w);
  const Complex denom = 1.0 - herm_inner(z, w);
  if (std::abs(denom) < kPoleGuard)
    throw DomainError("bergman_kernel: pole-adjacent evaluation");
  return 1.0 / detail::cpow(denom, z.dim() + 1.0 + alpha);
}

// A not-necessarily-holomorphic integrand, evaluable at quadrature nodes.
struct SampledFunction {
  std::function<Complex(const CPoint&)> eval;
  bool integrable = true;

  static SampledFunction of_holo(const HoloFunc& f) {
    return {[f](const CPoint& z) { return f.eval(z); }, true};
  }
};

// P_alpha u(z) = int K^alpha(z,w) u(w) dv_alpha(w), evaluated pointwise.
inline Estimate project(double alpha, const SampledFunction& u, const CPoint& z,
                        const QuadSpec& spec) {
  Estimate e = integrate_ball(
      [&](const CPoint& w) { return bergman_kernel(alpha, z, w) * u.eval(w); },
      WeightedMeasure::v_alpha(alpha), spec);
  if (!u.integrable) e.diverged = true;
  return e;
}

}  // namespace bergman
