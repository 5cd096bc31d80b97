#include <cmath>
#include <vector>

#include "bergman/quadrature.hpp"
#include "bergman/tube.hpp"
#include "doctest.h"

using namespace bergman;

namespace {

double beta_fn(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

// Composite Simpson on [lo,hi]; brute-force oracle, independent of the
// Gauss rules under test.
template <class F>
double simpson(F&& f, double lo, double hi, int m = 2000) {
  double s = f(lo) + f(hi);
  const double h = (hi - lo) / (2 * m);
  for (int i = 1; i < 2 * m; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Closed-form reduction of the tube volume to a planar integral:
// v_alpha^{(n)}(Q_r) = [c_alpha^{(n)} n! G(a+1)/G(a+n) / c^{(1)}_{a+n-1}]
//                      * v^{(1)}_{a+n-1}(Q_r).
double tube_volume_reduction(int n, double alpha, double r) {
  const CarlesonTube flat(CPoint{Complex(1.0)}, r);
  const QuadSpec spec = QuadSpec::product(1, 48, 48);
  const double v1 = tube_integrate([](const CPoint&) { return 1.0; }, flat,
                                   alpha + n - 1.0, spec)
                        .real();
  const double factor = c_alpha(n, alpha) *
                        std::exp(std::lgamma(n + 1.0) + std::lgamma(alpha + 1.0) -
                                 std::lgamma(alpha + n)) /
                        c_alpha(1, alpha + n - 1.0);
  return factor * v1;
}

}  // namespace

TEST_CASE("c_alpha values") {
  CHECK(c_alpha(1, 0.0) == doctest::Approx(1.0));
  CHECK(c_alpha(2, 0.0) == doctest::Approx(1.0));
  CHECK(c_alpha(1, 1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(c_alpha(1, -1.0), InvalidArgument);
}

TEST_CASE("gauss rules reproduce Beta moments") {
  for (double a : {0.0, 0.5, 1.0, 2.5}) {
    for (double b : {0.0, 1.5}) {
      Rule1D rule = jacobi_unit(12, a, b);
      for (int k = 0; k <= 5; ++k) {
        double got = 0.0;
        for (int i = 0; i < rule.size(); ++i)
          got += rule.weights[i] * std::pow(rule.nodes[i], k);
        // int_0^1 (1-t)^a t^{b+k} dt
        CHECK(got == doctest::Approx(beta_fn(b + k + 1.0, a + 1.0))
                         .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("monomial norm oracle: stated values and 1-D numerical check") {
  CHECK(monomial_norm_exact({1}, 1, 0.0) == doctest::Approx(0.5));
  CHECK(monomial_norm_exact({2}, 1, 0.0) == doctest::Approx(1.0 / 3.0));
  CHECK(monomial_norm_exact({1, 0}, 2, 0.0) == doctest::Approx(1.0 / 3.0));

  // n = 1: c_a int_0^1 t^j (1-t)^a dt via Simpson with the weight folded in
  for (double a : {0.0, 1.0, 2.5}) {
    for (int j = 0; j <= 6; ++j) {
      const double num =
          c_alpha(1, a) *
          simpson([&](double t) { return std::pow(t, j) *
                                         std::pow(1.0 - t, a); },
                  0.0, 1.0, 4000);
      CHECK(monomial_norm_exact({j}, 1, a) ==
            doctest::Approx(num).epsilon(1e-8));
    }
  }

  // n = 2: iterated Beta reduction against the closed form
  for (double a : {0.0, 1.0}) {
    for (int j1 = 0; j1 <= 3; ++j1) {
      for (int j2 = 0; j2 <= 3; ++j2) {
        const double iterated = c_alpha(2, a) * 2.0 *
                                beta_fn(j2 + 1.0, a + 1.0) *
                                beta_fn(j1 + 1.0, j2 + a + 2.0);
        CHECK(monomial_norm_exact({j1, j2}, 2, a) ==
              doctest::Approx(iterated).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("integrate_ball product rule, n = 1") {
  const QuadSpec spec = QuadSpec::product(1, 24, 64);
  CHECK(integrate_ball([](const CPoint&) { return 1.0; },
                       WeightedMeasure::v_alpha(0.0), spec)
            .real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_ball([](const CPoint& z) { return z.norm_sq(); },
                       WeightedMeasure::v_alpha(0.0), spec)
            .real() == doctest::Approx(0.5).epsilon(1e-12));

  for (double a : {0.0, 1.0, 2.5}) {
    for (int j = 0; j <= 6; ++j) {
      const Estimate e = integrate_ball(
          [&](const CPoint& z) { return std::pow(std::norm(z[0]), j); },
          WeightedMeasure::v_alpha(a), spec);
      CHECK(e.stderr_val == 0.0);
      CHECK(e.real() == doctest::Approx(monomial_norm_exact({j}, 1, a))
                            .epsilon(1e-8));
    }
  }
}

TEST_CASE("integrate_ball Monte Carlo, n = 2, against the monomial oracle") {
  const QuadSpec spec = QuadSpec::monte_carlo(2, 100000, 777);
  for (double a : {0.0, 1.0, 2.5}) {
    for (int j1 = 0; j1 <= 3; ++j1) {
      for (int j2 = 0; j2 <= 2; ++j2) {
        const Estimate e = integrate_ball(
            [&](const CPoint& z) {
              return std::pow(std::norm(z[0]), j1) *
                     std::pow(std::norm(z[1]), j2);
            },
            WeightedMeasure::v_alpha(a), spec);
        const double exact = monomial_norm_exact({j1, j2}, 2, a);
        CHECK(std::abs(e.real() - exact) < 4.0 * e.stderr_val + 1e-12);
      }
    }
  }
}

TEST_CASE("Monte Carlo estimates are deterministic given the seed") {
  const QuadSpec spec = QuadSpec::monte_carlo(2, 20000, 4242);
  auto f = [](const CPoint& z) { return std::cos(z[0].real()) + z.norm_sq(); };
  const Estimate a = integrate_ball(f, WeightedMeasure::v_alpha(1.0), spec);
  const Estimate b = integrate_ball(f, WeightedMeasure::v_alpha(1.0), spec);
  CHECK(a.value.real() == b.value.real());
  CHECK(a.stderr_val == b.stderr_val);
  const Estimate c =
      integrate_ball(f, WeightedMeasure::v_alpha(1.0), spec.with_seed(77));
  CHECK(a.value.real() != c.value.real());
}

TEST_CASE("Bergman ball integrals against closed forms") {
  // tanh(gamma) = 0.5: int_{|u|<1/2} (1-|u|^2)^{-2} dv = 1/3
  const double gamma = std::atanh(0.5);
  const QuadSpec spec = QuadSpec::product(1, 32, 32);
  const BergmanBall ball(CPoint::zero(1), gamma);
  CHECK(integrate_bergman_ball([](const CPoint&) { return 1.0; }, ball, spec)
            .real() == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

  // tau(D(0,g)) = sinh(g)^{2n}
  for (double g : {0.5, 1.0, 2.0}) {
    const BergmanBall b1(CPoint::zero(1), g);
    const double sh = std::sinh(g);
    CHECK(integrate_bergman_ball([](const CPoint&) { return 1.0; }, b1, spec)
              .real() == doctest::Approx(sh * sh).epsilon(1e-9));

    const BergmanBall b2(CPoint::zero(2), g);
    const Estimate e2 = integrate_bergman_ball(
        [](const CPoint&) { return 1.0; }, b2,
        QuadSpec::monte_carlo(2, 50000, 99));
    // radial law is sampled exactly, so constant integrands have no variance
    CHECK(e2.real() == doctest::Approx(sh * sh * sh * sh).epsilon(1e-9));
  }

  CHECK_THROWS_AS(BergmanBall(CPoint::zero(1), 25.0).euclidean_radius(),
                  InvalidArgument);
}

TEST_CASE("Bergman ball integral is center-independent for transported g") {
  // int_{D(c,g)} (g o phi_c) dtau = int_{D(0,g)} g dtau
  auto bump = [](const CPoint& u) {
    return std::exp(-4.0 * u.norm_sq()) * (1.0 - u.norm_sq());
  };
  const double gamma = 0.8;
  const QuadSpec spec = QuadSpec::product(1, 40, 48);
  const double ref =
      integrate_bergman_ball(bump, BergmanBall(CPoint::zero(1), gamma), spec)
          .real();
  for (Complex c : {Complex(0.4, 0.1), Complex(-0.2, 0.6), Complex(0.85, 0.0)}) {
    CPoint center{c};
    auto transported = [&](const CPoint& z) { return bump(mobius(center, z)); };
    const double got = integrate_bergman_ball(
                           transported, BergmanBall(center, gamma), spec)
                           .real();
    CHECK(got == doctest::Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("global tau integrals: divergence flag and integrable case") {
  const QuadSpec spec = QuadSpec::product(1, 24, 24);
  const Estimate bad = integrate_ball([](const CPoint&) { return 1.0; },
                                      WeightedMeasure::tau(), spec);
  CHECK(bad.diverged);

  // int (1-|z|^2)^{n+2} dtau = int_0^1 (1-t) dt = 1/2 for n = 1
  const Estimate good = integrate_ball(
      [](const CPoint& z) { return std::pow(1.0 - z.norm_sq(), 3.0); },
      WeightedMeasure::tau(), spec);
  CHECK_FALSE(good.diverged);
  CHECK(good.real() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("sigma: sphere averages") {
  const QuadSpec s1 = QuadSpec::product(1, 8, 64);
  CHECK(integrate_ball([](const CPoint&) { return 1.0; },
                       WeightedMeasure::sigma(), s1)
            .real() == doctest::Approx(1.0));
  CHECK(std::abs(integrate_ball([](const CPoint& z) { return z[0]; },
                                WeightedMeasure::sigma(), s1)
                     .value) < 1e-14);

  // int |zeta_1|^2 dsigma = 1/n
  const Estimate e = integrate_ball(
      [](const CPoint& z) { return std::norm(z[0]); },
      WeightedMeasure::sigma(), QuadSpec::monte_carlo(2, 50000, 5));
  CHECK(std::abs(e.real() - 0.5) < 4.0 * e.stderr_val);
}

TEST_CASE("tube volume: whole-ball radii and simple oracles") {
  CPoint zeta{Complex(1.0)};
  const Estimate whole =
      tube_volume(CarlesonTube(zeta, 1.5), 0.0, QuadSpec::product(1));
  CHECK(whole.real() == 1.0);
  CHECK(whole.stderr_val == 0.0);

  // alpha = 0, n = 1: v(Q_r) = (1/pi) int_0^{r^2} 2 s acos(s/2) ds
  for (double r : {0.6, 1.0, 1.3}) {
    const double oracle =
        simpson([](double s) { return 2.0 * s * std::acos(s / 2.0); }, 0.0,
                r * r, 4000) /
        kPi;
    const double got = tube_volume(CarlesonTube(zeta, r), 0.0,
                                   QuadSpec::product(1, 40, 40))
                           .real();
    CHECK(got == doctest::Approx(oracle).epsilon(1e-9));
  }

  // alpha = 1: 2-D Simpson oracle over (s, psi)
  {
    const double r = 0.9;
    auto inner = [&](double s) {
      const double psi_star = std::acos(std::min(1.0, s / 2.0));
      return simpson(
          [&](double psi) {
            return std::pow(s * (2.0 * std::cos(psi) - s), 1.0);
          },
          0.0, psi_star, 400);
    };
    const double oracle = c_alpha(1, 1.0) / kPi *
                          simpson([&](double s) { return 2.0 * s * inner(s); },
                                  0.0, r * r, 800);
    const double got = tube_volume(CarlesonTube(zeta, r), 1.0,
                                   QuadSpec::product(1, 40, 40))
                           .real();
    CHECK(got == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("tube volume: Monte Carlo agrees with deterministic reduction") {
  Rng rng(61);
  for (int n : {1, 2}) {
    CPoint zeta = CPoint::zero(n);
    zeta[0] = Complex(std::cos(0.7), std::sin(0.7));
    if (n == 2) {
      zeta[0] *= std::sqrt(0.6);
      zeta[1] = std::sqrt(0.4);
    }
    for (double alpha : {0.0, 1.0}) {
      for (double r : {0.25, 0.7, 1.2}) {
        const CarlesonTube tube(zeta, r);
        const Estimate mc =
            tube_volume(tube, alpha, QuadSpec::monte_carlo(n, 60000, 1212));
        const double exact = tube_volume_reduction(n, alpha, r);
        CHECK(std::abs(mc.real() - exact) <
              4.0 * mc.stderr_val + 1e-10 * exact + 1e-14);
      }
    }
  }
}

TEST_CASE("tube volume is rotation invariant") {
  const double r = 0.5, alpha = 1.0;
  std::vector<CPoint> apexes;
  apexes.push_back(CPoint{Complex(1.0), Complex(0.0)});
  apexes.push_back(CPoint{Complex(0.0), Complex(0.0, 1.0)});
  apexes.push_back(CPoint{Complex(0.6, 0.0), Complex(0.0, 0.8)});
  std::vector<Estimate> vols;
  for (const CPoint& zeta : apexes)
    vols.push_back(tube_volume(CarlesonTube(zeta, r), alpha,
                               QuadSpec::monte_carlo(2, 40000, 31)));
  for (size_t i = 1; i < vols.size(); ++i) {
    const double tol =
        3.0 * std::hypot(vols[0].stderr_val, vols[i].stderr_val) + 1e-12;
    CHECK(std::abs(vols[i].real() - vols[0].real()) < tol);
  }
}

TEST_CASE("tube volume log-log slope matches 2(n+1+alpha)") {
  struct Cfg {
    int n;
    double alpha;
  };
  for (Cfg cfg : {Cfg{1, 0.0}, Cfg{1, 1.0}, Cfg{2, 0.0}}) {
    CPoint zeta = CPoint::zero(cfg.n);
    zeta[0] = 1.0;
    std::vector<double> radii, vols;
    for (int j = 1; j <= 7; ++j) {
      const double r = std::pow(2.0, -j);
      radii.push_back(r);
      vols.push_back(tube_volume_reduction(cfg.n, cfg.alpha, r));
    }
    const double slope = loglog_slope(radii, vols);
    const double expected = 2.0 * (cfg.n + 1.0 + cfg.alpha);
    CHECK(std::abs(slope - expected) / expected < 0.05);
  }
}
