#pragma once

#include <array>
#include <span>

#include "poincare/kgradient.hpp"
#include "poincare/polarization.hpp"

namespace poincare {

/// How the covariant derivative D = grad_k - i chi alpha is discretized.
enum class CovariantStencil {
  /// D g_chi = e_chi^*(k) . FD[e_chi g_chi](k) with e_L = e, e_R = e^*. Exactly
  /// covariant under gauge transformations and anti-hermitian in the interior.
  Link,
  /// FD[g] - i chi alpha g with the stored connection.
  Connection,
};

struct CovariantOptions {
  CovariantStencil stencil = CovariantStencil::Link;
  /// -1 flips the sign of the connection term (negative control).
  double connection_sign = 1.0;
  GradientOptions gradient{};
};

/// Two-component momentum-space photon wavefunction (g_L, g_R) = sqrt(N) (f_L, f_R).
///
/// Amplitudes are stored at t = 0 together with an evolution time; the state
/// represented is e^{-i omega t} g. Free evolution therefore only changes the
/// time stamp, and derivatives treat the phase analytically.
class PhotonWaveFunction {
 public:
  /// The excluded k = 0 point is set to zero.
  PhotonWaveFunction(BasisPtr basis, CArray left, CArray right, double time = 0.0);

  static PhotonWaveFunction zero(BasisPtr basis, double time = 0.0);

  const GridPair& grid() const { return *basis_->grid; }
  const GridPtr& grid_ptr() const { return basis_->grid; }
  const PolarizationBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  double time() const { return time_; }

  const CArray& left0() const { return left_; }
  const CArray& right0() const { return right_; }
  /// chi = +1 selects g_L, chi = -1 selects g_R.
  const CArray& component0(int chi) const { return chi > 0 ? left_ : right_; }

  /// Amplitudes at time().
  CArray left() const;
  CArray right() const;

  PhotonWaveFunction& operator+=(const PhotonWaveFunction& other);
  PhotonWaveFunction& operator-=(const PhotonWaveFunction& other);
  PhotonWaveFunction& operator*=(Complex s);

 private:
  BasisPtr basis_;
  CArray left_;
  CArray right_;
  double time_ = 0.0;
};

PhotonWaveFunction operator+(PhotonWaveFunction a, const PhotonWaveFunction& b);
PhotonWaveFunction operator-(PhotonWaveFunction a, const PhotonWaveFunction& b);
PhotonWaveFunction operator*(Complex s, PhotonWaveFunction a);

/// <a|b> = sum dVk/(hbar omega) [g_La^* g_Lb + g_Ra^* g_Rb].
Complex scalar_product(const PhotonWaveFunction& a, const PhotonWaveFunction& b);

/// N = <g|g>.
double photon_number(const PhotonWaveFunction& wf);

/// (g_L, g_R) -> (g_L, -g_R).
PhotonWaveFunction apply_helicity(const PhotonWaveFunction& wf);

PhotonWaveFunction evolve(const PhotonWaveFunction& wf, double t);

/// Companion of gauge_transform: g_L -> e^{i phi} g_L, g_R -> e^{-i phi} g_R,
/// re-attached to `new_basis`. The synthesized field is unchanged.
PhotonWaveFunction transform_amplitudes(const PhotonWaveFunction& wf, BasisPtr new_basis,
                                        std::span<const double> phase);

double boundary_margin(const PhotonWaveFunction& wf);
void enforce_boundary_decay(const PhotonWaveFunction& wf, const GradientOptions& opts, const char* what);

/// (D_x, D_y, D_z) applied to both helicity components.
std::array<PhotonWaveFunction, 3> covariant_derivative(const PhotonWaveFunction& wf,
                                                       const CovariantOptions& opts = {});

/// D_axis acting on one helicity component given as t = 0 amplitudes `g0` of a
/// state at time `time`; returns the t = 0 amplitudes of the result. No
/// boundary check.
CArray covariant_component(const PolarizationBasis& basis, int chi, std::span<const Complex> g0, double time,
                           int axis, const CovariantOptions& opts);

}  // namespace poincare
