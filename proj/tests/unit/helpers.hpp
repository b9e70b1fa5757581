#pragma once

#include <random>

#include "poincare/algebra_checks.hpp"
#include "poincare/beams.hpp"
#include "poincare/observables.hpp"

namespace testing_support {

using namespace poincare;

// Relaxed D options for 32^3 states that only decay to ~1e-4 at the k-box edge.
inline CovariantOptions loose(double tol = 1e-3) {
  CovariantOptions o;
  o.gradient = GradientOptions{tol, BoundaryPolicy::Throw};
  return o;
}

// Mixed-helicity vortex on a 32^3 grid (dx = 1), off-centre in r and away from the x chart poles.
inline PhotonWaveFunction small_packet(int n = 32, Vec3 chart = {1, 0, 0}, int m = 1) {
  GridPtr g = make_grid(n, 1.0);
  GaussianVortexSpec s;
  const double box = kPi;
  s.k0 = {0.3 * box, 0.25 * box, 0.35 * box};
  s.r0 = {1.0, -0.5, 0.75};
  s.sigma_par = s.sigma_perp = 0.125 * box;
  s.m = m;
  s.a_left = 1.0;
  s.a_right = Complex(0.3, 0.5);
  s.edge_tol = 1e-3;
  return gaussian_vortex(build_basis(g, chart), s);
}

// Smooth packet on 64^3 that also decays in real space (field picture).
inline PhotonWaveFunction field_packet(int n = 64, double k0 = 1.2, double sigma = 0.26) {
  GridPtr g = make_grid(n, 1.0);
  GaussianVortexSpec s;
  s.k0 = {0.3 * k0, 0.2 * k0, k0};
  s.r0 = {1.5, -1.0, 0.5};
  s.sigma_par = s.sigma_perp = sigma;
  s.a_left = 1.0;
  s.a_right = 0.2;
  return gaussian_vortex(build_basis(g, {1, 0, 0}), s);
}

// Single occupied momentum bin (i, j, l) with the given helicity amplitudes.
inline PhotonWaveFunction single_bin(BasisPtr basis, std::array<int, 3> at, Complex gl, Complex gr = 0.0) {
  const GridPair& g = *basis->grid;
  CArray l(g.size()), r(g.size());
  const std::size_t i = g.index(at[0], at[1], at[2]);
  l[i] = gl;
  r[i] = gr;
  return PhotonWaveFunction(std::move(basis), std::move(l), std::move(r));
}

inline CArray random_array(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  CArray a(n);
  for (auto& v : a) v = Complex(d(rng), d(rng));
  return a;
}

inline double max_abs_diff(const CArray& a, const CArray& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const CArray& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace testing_support
