#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "bergman/quadrature.hpp"

namespace bergman {

// A gamma-separated point family with covering / bounded-overlap
// certificates: the constructive realization of the covering lemma.
struct Lattice {
  std::vector<CPoint> points;
  double gamma = 0.0;
  double rmax = 0.0;
  int n = 0;
  std::uint64_t grid_seed = 0;

  // certificates
  double separation = 0.0;       // certified min pairwise beta
  int overlap_bound = 0;         // max multiplicity of {D(a_k, 3 gamma)} seen
  double covering_defect = 1.0;  // probe fraction not covered by {D(a_k, g)}
  bool covering_certified = false;
};

// Fraction of probe points lying in no D(a_k, gamma); 0 certifies covering
// at probe resolution.
inline double covering_defect(const Lattice& lat,
                              const std::vector<CPoint>& probes) {
  if (probes.empty()) return 0.0;
  long missed = 0;
  for (const CPoint& z : probes) {
    bool covered = false;
    for (const CPoint& a : lat.points) {
      if (bergman_metric(a, z) < lat.gamma) {
        covered = true;
        break;
      }
    }
    if (!covered) ++missed;
  }
  return static_cast<double>(missed) / static_cast<double>(probes.size());
}

// Number of k with beta(z, a_k) < factor * gamma.
inline int overlap_count(const Lattice& lat, const CPoint& z,
                         double factor = 3.0) {
  int count = 0;
  for (const CPoint& a : lat.points)
    if (bergman_metric(a, z) < factor * lat.gamma) ++count;
  return count;
}

namespace detail {

// Hyperbolically equi-dense probe/candidate generator: Bergman radius
// uniform up to atanh(rmax), direction uniform on the sphere.
inline std::vector<CPoint> hyperbolic_probes(int n, double rmax, long count,
                                             std::uint64_t seed) {
  std::vector<CPoint> out;
  out.reserve(count);
  Rng rng(seed);
  const double smax = std::atanh(rmax);
  for (long i = 0; i < count; ++i) {
    const double s = smax * rng.uniform();
    out.push_back(std::tanh(s) * sphere_point(rng, n));
  }
  return out;
}

}  // namespace detail

// Greedy maximal gamma/2-separated subset of a hyperbolically dense
// candidate grid on {|z| <= rmax}. Maximality makes the gamma-balls cover
// the truncated ball up to grid resolution; the certificate fields record
// what a probe sweep actually verified. grid_seed rotates the candidate
// shells (the lattice should not depend on grid alignment beyond +-1 in the
// overlap bound).
inline Lattice build_lattice(int n, double gamma, double rmax,
                             int grid_density, std::uint64_t grid_seed = 0,
                             long probe_count = 10000,
                             std::uint64_t probe_seed = 0xcafe) {
  if (!(gamma > 0.0) || gamma > 2.0)
    throw InvalidArgument("build_lattice: gamma outside (0, 2]");
  if (!(rmax > 0.0) || rmax > 0.99)
    throw InvalidArgument("build_lattice: rmax outside (0, 0.99]");
  if (grid_density < 1) throw InvalidArgument("build_lattice: grid_density < 1");

  const double h = gamma / (2.0 * grid_density);
  const double smax = std::atanh(rmax);
  const int shells = static_cast<int>(std::ceil(smax / h));

  Lattice lat;
  lat.gamma = gamma;
  lat.rmax = rmax;
  lat.n = n;
  lat.grid_seed = grid_seed;

  Rng offset_rng(Rng::substream(grid_seed, 0x1a77));
  std::vector<CPoint> candidates;
  candidates.push_back(CPoint::zero(n));
  for (int j = 1; j <= shells; ++j) {
    const double s = std::min(smax, j * h);
    const double rho = std::tanh(s);
    if (n == 1) {
      // hyperbolic circumference 2 pi rho / (1 - rho^2)
      const int m = std::max<int>(
          6, static_cast<int>(std::ceil(kTwoPi * rho / ((1.0 - rho * rho) * h))));
      const double off = offset_rng.uniform();
      for (int i = 0; i < m; ++i) {
        const double th = kTwoPi * (i + off) / m;
        candidates.push_back(CPoint{rho * Complex(std::cos(th), std::sin(th))});
      }
    } else {
      // The tight Bergman direction on the shell scales like (1-rho^2), so
      // a Euclidean net of spacing h (1-rho^2) is metrically h-dense.
      const double delta = h * (1.0 - rho * rho);
      const double surface = 2.0 * kPi * kPi * std::pow(rho, 2 * n - 1);
      const long m = std::max<long>(
          8, static_cast<long>(std::ceil(surface / std::pow(delta, 2 * n - 1))));
      Rng shell_rng(Rng::substream(grid_seed, 0x2b00 + j));
      for (long i = 0; i < m; ++i)
        candidates.push_back(rho * detail::sphere_point(shell_rng, n));
    }
  }

  for (const CPoint& cand : candidates) {
    bool separated = true;
    for (const CPoint& a : lat.points) {
      if (bergman_metric(a, cand) < gamma / 2.0) {
        separated = false;
        break;
      }
    }
    if (separated) lat.points.push_back(cand);
  }

  lat.separation = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < lat.points.size(); ++i)
    for (size_t j = i + 1; j < lat.points.size(); ++j)
      lat.separation =
          std::min(lat.separation, bergman_metric(lat.points[i], lat.points[j]));
  if (lat.points.size() < 2) lat.separation = gamma;  // vacuous certificate

  const std::vector<CPoint> probes =
      detail::hyperbolic_probes(n, rmax, probe_count, probe_seed);
  lat.covering_defect = covering_defect(lat, probes);
  lat.covering_certified = lat.covering_defect == 0.0;
  lat.overlap_bound = 0;
  for (const CPoint& z : probes)
    lat.overlap_bound = std::max(lat.overlap_bound, overlap_count(lat, z));
  return lat;
}

}  // namespace bergman
