#pragma once

#include <optional>

#include "poincare/fields_bridge.hpp"

namespace poincare {

struct GeneratorSet {
  double H = 0.0;
  Vec3 P{};
  Vec3 J{};
  Vec3 K{};
  double N = 0.0;
  std::optional<Vec3> Jo;
  std::optional<Vec3> Js;
};

/// Quadrature-health numbers that come with the photon-picture generators.
struct PhotonDiagnostics {
  /// |Im sum| / sum |integrand| for the orbital and boost expectation values.
  double imag_orbital = 0.0;
  double imag_boost = 0.0;
  /// max over points of |k . j_o(k)| / (|k| |j_o(k)|), j_o the orbital integrand.
  double orbital_parallel = 0.0;
  double boundary_margin = 0.0;
};

struct PhotonGenerators {
  GeneratorSet set;
  PhotonDiagnostics diag;
};

struct FieldPictureOptions {
  /// Decay required of |F| on the outer two-cell shell of the real grid before
  /// the position-weighted J and K are computed. The integrands are quadratic
  /// in F, so 1e-6 in amplitude bounds the truncated share near 1e-12.
  GradientOptions boundary{1e-6, BoundaryPolicy::Throw};
  /// Skip J and K entirely (periodic plane waves).
  bool skip_moments = false;
};

/// H = sum dV |F|^2, P = sum dV Im(F^* x F)/c, J = sum dV r x Im(F^* x F)/c,
/// K = sum dV r |F|^2, with r from the grid centre. N, Jo, Js are left empty.
/// Im(F^* x F)/c = eps0 E x B is the momentum density.
GeneratorSet generators_field_picture(const RSField& field, const FieldPictureOptions& opts = {});

/// Expectation values of H = hbar w, P = hbar k, J = i hbar D x k + hbar chi n,
/// K = i hbar w D in the invariant scalar product. Jo and Js are filled, J = Jo + Js.
PhotonGenerators generators_photon_picture(const PhotonWaveFunction& wf, const CovariantOptions& opts = {});

struct AngularSplit {
  Vec3 Jo{};
  Vec3 Js{};
  PhotonDiagnostics diag;
};

/// Canonical split: the orbital integrand is perpendicular to k, the spin
/// integrand parallel to it.
AngularSplit split_angular_momentum(const PhotonWaveFunction& wf, const CovariantOptions& opts = {});

/// k-space form from plane-wave amplitudes:
///   Jo = Re[-2i eps0 sum dVk/(c|k|) E_i^* (k x grad) E_i],  Js = 2 eps0 sum dVk Im(E^* x E)/(c|k|).
/// The orbital term is evaluated on E/sqrt|k| so the discrete form stays hermitian.
AngularSplit darwin_split(const SpectralEField& ek, const GradientOptions& opts = {});

/// Real-space form Jo = eps0 sum dV E_i (r x grad) A_i, Js = eps0 sum dV E x A
/// with spectral gradients. Requires a transverse A (see vector_potential).
AngularSplit textbook_split(const RealVectorField& E, const RealVectorField& A);

/// Largest grid (points) accepted by spin_nonlocal_real.
inline constexpr std::size_t kNonlocalMaxPoints = 24 * 24 * 24;

/// Js = eps0 sum dV E(r) x A(r), A(r) = sum dV' curl B(r') / (4 pi |r - r'|),
/// evaluated as a direct double sum. The singular self term uses the exact
/// cell average of 1/(4 pi r). Throws CostGuardError above kNonlocalMaxPoints.
Vec3 spin_nonlocal_real(const RealVectorField& E, const RealVectorField& B);

/// The O(n^2) potential sum behind spin_nonlocal_real.
RVecField nonlocal_potential(const GridPair& grid, const RVecField& source);

namespace serial {
RVecField nonlocal_potential(const GridPair& grid, const RVecField& source);
}

/// Rotates the state by quarter turns about a coordinate axis by permuting
/// momentum-grid points. Requires a cubic grid with equal spacings. The first
/// plane of each axis has no mirror partner and is dropped, so the rotation is
/// exact only for states that vanish there.
PhotonWaveFunction rotate_quarter_turns(const PhotonWaveFunction& wf, int axis, int turns);

/// Rotates a vector by quarter turns about a coordinate axis (companion of rotate_quarter_turns).
Vec3 rotate_vector(const Vec3& v, int axis, int turns);

}  // namespace poincare
