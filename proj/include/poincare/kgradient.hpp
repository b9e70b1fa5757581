#pragma once

#include <span>

#include "poincare/grid.hpp"

namespace poincare {

enum class BoundaryPolicy { Throw, Warn, Ignore };

struct GradientOptions {
  /// Allowed ratio of the largest modulus within two cells of the momentum
  /// grid boundary to the global largest modulus.
  double boundary_tol = 1e-8;
  BoundaryPolicy policy = BoundaryPolicy::Throw;
};

/// Largest modulus on the outer two-cell shell and overall.
struct EdgePeak {
  double edge = 0.0;
  double peak = 0.0;
  double margin() const { return peak > 0.0 ? edge / peak : 0.0; }
  /// Joins arrays that share one scale (components of a field).
  EdgePeak& operator+=(const EdgePeak& o);
};

EdgePeak edge_peak(const GridPair& grid, std::span<const Complex> a);
EdgePeak edge_peak(const GridPair& grid, std::span<const double> a);

/// max |a| on the outer two-cell shell divided by max |a| overall (0 for a zero array).
double boundary_margin(const GridPair& grid, std::span<const Complex> a);
double boundary_margin(const GridPair& grid, std::span<const double> a);
/// Same for a vector field, relative to the largest component anywhere.
double boundary_margin(const GridPair& grid, const CVecField& v);

/// Applies the boundary policy to a margin; `what` names the array in the message.
void enforce_margin(double margin, const GradientOptions& opts, const char* what);
void enforce_boundary_decay(const GridPair& grid, std::span<const Complex> a, const GradientOptions& opts,
                            const char* what);
void enforce_boundary_decay(const GridPair& grid, const CVecField& v, const GradientOptions& opts, const char* what);

/// Non-periodic second-order finite differences of a momentum-space array
/// along each k axis: central in the interior, one-sided on the edge planes.
CVecField spectral_gradient_k(const GridPair& grid, std::span<const Complex> a, const GradientOptions& opts = {});

/// Same stencil along a single axis, without the boundary check.
CArray difference_k(const GridPair& grid, std::span<const Complex> a, int axis);
RArray difference_k(const GridPair& grid, std::span<const double> a, int axis);

}  // namespace poincare
