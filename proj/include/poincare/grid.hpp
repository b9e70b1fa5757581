#pragma once

#include <array>
#include <cstddef>
#include <memory>

#include "poincare/types.hpp"
#include "poincare/units.hpp"

namespace poincare {

/// Matched real-space and momentum-space Cartesian grids.
///
/// Both grids are stored in centered order: index j on an axis with n points
/// sits at (j - n/2) * step, so r = 0 and k = 0 are at index n/2 and
/// neighbouring indices are neighbouring momenta. Arrays are x-major with z
/// fastest. The momentum step is dk_i = 2 pi / (n_i dx_i).
///
/// The k = 0 point carries zero quadrature weight: the measure d^3k / omega
/// is singular there and no radiation field has a DC component.
class GridPair {
 public:
  GridPair(std::array<int, 3> dims, Vec3 spacing, Units units);

  const std::array<int, 3>& dims() const { return dims_; }
  const Vec3& spacing() const { return spacing_; }
  const Vec3& dk() const { return dk_; }
  const Units& units() const { return units_; }
  std::size_t size() const { return size_; }
  double dV() const { return dV_; }
  double dVk() const { return dVk_; }
  Vec3 box_length() const;

  std::size_t index(int i, int j, int l) const {
    return (std::size_t(i) * std::size_t(dims_[1]) + std::size_t(j)) * std::size_t(dims_[2]) + std::size_t(l);
  }
  std::array<int, 3> coords(std::size_t idx) const;

  double r_axis(int axis, int j) const { return (j - dims_[axis] / 2) * spacing_[axis]; }
  double k_axis(int axis, int j) const { return (j - dims_[axis] / 2) * dk_[axis]; }
  Vec3 r(std::size_t idx) const;
  Vec3 k(std::size_t idx) const;

  std::size_t zero_index() const { return zero_index_; }
  bool excluded(std::size_t idx) const { return idx == zero_index_; }

  /// |k|, omega = c|k| and n = k/|k| per momentum point. At the excluded
  /// point |k| = omega = 0 and n is fixed to +z.
  const RArray& kmag() const { return kmag_; }
  const RArray& omega() const { return omega_; }
  const RVecField& unit_k() const { return unit_k_; }
  Vec3 unit_k(std::size_t idx) const { return {unit_k_[0][idx], unit_k_[1][idx], unit_k_[2][idx]}; }

  /// Quadrature weight dVk / (hbar omega) of the invariant scalar product; zero at k = 0.
  const RArray& invariant_weight() const { return invariant_weight_; }

  bool same_layout(const GridPair& other) const;

 private:
  std::array<int, 3> dims_;
  Vec3 spacing_;
  Units units_;
  Vec3 dk_{};
  std::size_t size_ = 0;
  double dV_ = 0.0;
  double dVk_ = 0.0;
  std::size_t zero_index_ = 0;
  RArray kmag_;
  RArray omega_;
  RVecField unit_k_;
  RArray invariant_weight_;
};

using GridPtr = std::shared_ptr<const GridPair>;

/// Validates and builds a grid. Each dimension must be even and at least 8,
/// spacings strictly positive.
GridPtr make_grid(std::array<int, 3> dims, Vec3 spacing, Units units = {});

/// Cubic convenience overload.
GridPtr make_grid(int n, double spacing, Units units = {});

void require_same_grid(const GridPair& a, const GridPair& b, const char* what);

}  // namespace poincare
