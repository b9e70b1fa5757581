#pragma once

#include <span>

#include "poincare/grid.hpp"

namespace poincare {

// Symmetric spectral convention, with sums approximating the integrals:
//   F(k) = (2 pi)^{-3/2} sum_r f(r) e^{-i k.r} dV
//   f(r) = (2 pi)^{-3/2} sum_k F(k) e^{+i k.r} dVk
// The pair is exactly inverse and unitary (Parseval with dV and dVk).

CArray forward_transform(const GridPair& grid, std::span<const Complex> field_r);
CArray inverse_transform(const GridPair& grid, std::span<const Complex> field_k);
CVecField forward_transform(const GridPair& grid, const CVecField& field_r);
CVecField inverse_transform(const GridPair& grid, const CVecField& field_k);

// Spectral (periodic) derivatives of real-space fields. The Nyquist planes
// are dropped so real input stays real.
CVecField spectral_gradient_r(const GridPair& grid, std::span<const Complex> field_r);
CVecField spectral_curl_r(const GridPair& grid, const CVecField& field_r);
CArray spectral_divergence_r(const GridPair& grid, const CVecField& field_r);

/// Multiplies a momentum-space array by i k_axis, zeroing the Nyquist plane.
void multiply_ik(const GridPair& grid, std::span<Complex> field_k, int axis);

/// True when idx lies on a Nyquist plane (centered index 0) of any axis.
bool on_nyquist_plane(const GridPair& grid, std::size_t idx);

CVecField to_complex(const RVecField& v);
RVecField real_part(const CVecField& v);

}  // namespace poincare
