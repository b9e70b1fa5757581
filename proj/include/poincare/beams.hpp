#pragma once

#include "poincare/photon_state.hpp"

namespace poincare {

/// Gaussian-regularized Bessel beam about the z axis.
struct BesselSpec {
  double k_perp0 = 0.0;
  double k_z0 = 0.0;
  int m = 0;
  int helicity = 1;
  double sigma_perp = 0.0;
  double sigma_z = 0.0;
  /// The state is normalized to N = amplitude^2.
  double amplitude = 1.0;
};

/// E(k) = -(theta_hat +- i phi_hat) e^{i m phi} G(k_perp - k_perp0) G(k_z - k_z0)
/// about z (components (-(kz/k) cos phi +- i sin phi, -(kz/k) sin phi -+ i cos phi, k_perp/k)),
/// projected onto the basis. Throws std::invalid_argument for invalid specs,
/// unresolvable widths, a ring closer than 4 dk to the grid edge, or a chart
/// pole within 3 widths of the ring.
PhotonWaveFunction bessel_beam(BasisPtr basis, const BesselSpec& spec);

/// Orbital-to-spin ratio Jo_z / (h Js_z) in the narrow-width limit: m k / k_z - h.
double bessel_ratio_analytic(int m, double kz_over_k, int helicity);

/// Signed ratio Jo_z / Js_z = m k / (h k_z) - 1.
double bessel_signed_ratio_analytic(int m, double kz_over_k, int helicity);

/// Smooth vortex packet: the helicity-chi part of
///   a_chi exp(-(k_par - k0)^2/2 sp^2 - k_perp^2/2 sq^2) ((k_u + i k_v)/sigma_perp)^m eps_chi
/// with (u, v, w = k0/|k0|) the beam frame and eps_+- = (u +- i v)/sqrt(2). For m < 0 the
/// conjugate polynomial is used. A factor e^{-i k.r0} moves the packet to r0
/// at t = 0. The state is normalized to N = photons.
struct GaussianVortexSpec {
  Vec3 k0{0.0, 0.0, 0.0};
  Vec3 r0{0.0, 0.0, 0.0};
  double sigma_par = 0.0;
  double sigma_perp = 0.0;
  int m = 0;
  Complex a_left = 1.0;
  Complex a_right = 0.0;
  double photons = 1.0;
  /// Largest allowed boundary margin (see kgradient.hpp) of the result.
  double edge_tol = 1e-8;
};

PhotonWaveFunction gaussian_vortex(BasisPtr basis, const GaussianVortexSpec& spec);

/// Fraction of photons in the helicity opposite to `helicity`.
double helicity_leakage(const PhotonWaveFunction& wf, int helicity);

}  // namespace poincare
