#pragma once

#include <memory>
#include <span>
#include <vector>

#include "poincare/grid.hpp"

namespace poincare {

/// Circular polarization basis e(k) = (theta_hat + i phi_hat)/sqrt(2), with
/// spherical angles measured about `chart_axis`, and its connection
/// alpha_j = -Im(e^* . d_j e).
///
/// The chart is singular along +-chart_axis; points within `pole_eps` radians
/// of either pole are listed in `pole_points` and receive the azimuth-zero
/// limit of the basis.
struct PolarizationBasis {
  GridPtr grid;
  Vec3 chart_axis{0.0, 0.0, 1.0};
  double pole_eps = 1e-6;
  CVecField e;
  RVecField alpha;
  std::vector<std::size_t> pole_points;

  CVec3 at(std::size_t idx) const { return {e[0][idx], e[1][idx], e[2][idx]}; }
  Vec3 connection(std::size_t idx) const { return {alpha[0][idx], alpha[1][idx], alpha[2][idx]}; }
  bool is_pole(std::size_t idx) const;
};

using BasisPtr = std::shared_ptr<const PolarizationBasis>;

/// Polarization vector at an arbitrary momentum (must be nonzero).
CVec3 polarization_vector(const Vec3& k, const Vec3& chart_axis, double pole_eps = 1e-6);

/// Orthonormal (u, v) completing chart_axis to a right-handed frame (u, v, axis).
std::pair<Vec3, Vec3> transverse_frame(const Vec3& axis);

BasisPtr build_basis(GridPtr grid, Vec3 chart_axis, double pole_eps = 1e-6);

/// e -> e^{-i phi} e, alpha -> alpha + grad phi (finite differences, no decay
/// requirement). Amplitudes transform with the companion rule in photon_state.
BasisPtr gauge_transform(const PolarizationBasis& basis, std::span<const double> phase);

/// Largest pointwise violation of each polarization identity over non-pole,
/// non-excluded points.
struct IdentityResiduals {
  double transverse = 0.0;   // |c k x e + i omega e| / omega
  double null = 0.0;         // |e . e|
  double unit = 0.0;         // |e^* . e - 1|
  double spin = 0.0;         // |e^* x e - i n|
  double antipodal = 0.0;    // |e^*(k) . e(-k)|, where -k is on the grid
  double self_cross = 0.0;   // |e x e|
  double projector = 0.0;    // max_ij |e_i^* e_j - (delta_ij - n_i n_j + i eps_ijl n_l)/2|
  double max() const;
};

IdentityResiduals check_identities(const PolarizationBasis& basis);

/// Line integral of alpha around the rectangle of grid lines in the plane
/// `normal_axis` = plane_index, spanning [lo, hi] index ranges on the other two
/// axes (taken in cyclic order), traversed counterclockwise about +normal_axis.
/// Trapezoid rule on the grid values of alpha.
struct LoopSpec {
  int normal_axis = 2;
  int plane_index = 0;
  std::array<int, 2> lo{};
  std::array<int, 2> hi{};
};
double berry_loop_integral(const PolarizationBasis& basis, const LoopSpec& loop);

/// Signed solid angle subtended at k = 0 by the loop's flat rectangle, with the
/// sign of its normal-axis coordinate. Stokes with curl alpha = -n/|k|^2
/// predicts berry_loop_integral = -loop_solid_angle.
double loop_solid_angle(const GridPair& grid, const LoopSpec& loop);

/// Residual of the discrete curvature identity curl alpha = -n/|k|^2 on interior
/// points with |k| >= min_k whose direction is at least min_pole_angle from
/// both chart poles.
struct CurvatureCheck {
  double max_residual = 0.0;   // max |curl alpha + n/|k|^2|
  double max_reference = 0.0;  // max 1/|k|^2 over the same points
  std::size_t points = 0;
  double relative() const { return max_reference > 0.0 ? max_residual / max_reference : 0.0; }
};
CurvatureCheck curvature_check(const PolarizationBasis& basis, double min_k, double min_pole_angle);

}  // namespace poincare
