#include "poincare/kgradient.hpp"

#include <cstdio>

#include <iostream>
#include <string>

#include "poincare/kernels.hpp"

namespace poincare {

namespace {

template <class T>
EdgePeak edge_peak_impl(const GridPair& grid, std::span<const T> a) {
  if (a.size() != grid.size()) throw GridMismatchError("boundary check: array size does not match grid");
  const auto& d = grid.dims();
  EdgePeak m;
#pragma omp parallel
  {
    EdgePeak local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(a.size()); ++i) {
      const std::size_t idx = std::size_t(i);
      const double v = std::abs(a[idx]);
      local.peak = std::max(local.peak, v);
      const auto c = grid.coords(idx);
      bool edge = false;
      for (int ax = 0; ax < 3; ++ax) edge = edge || c[ax] < 2 || c[ax] >= d[ax] - 2;
      if (edge) local.edge = std::max(local.edge, v);
    }
#pragma omp critical
    {
      m.edge = std::max(m.edge, local.edge);
      m.peak = std::max(m.peak, local.peak);
    }
  }
  return m;
}

template <class T>
std::vector<T> difference_impl(const GridPair& grid, std::span<const T> a, int axis) {
  if (a.size() != grid.size()) throw GridMismatchError("k-gradient: array size does not match grid");
  std::vector<T> out(a.size());
  kernels::difference_along_axis<T>(grid.dims(), grid.dk()[axis], a, out, axis);
  return out;
}

}  // namespace

EdgePeak edge_peak(const GridPair& grid, std::span<const Complex> a) { return edge_peak_impl(grid, a); }
EdgePeak edge_peak(const GridPair& grid, std::span<const double> a) { return edge_peak_impl(grid, a); }

EdgePeak& EdgePeak::operator+=(const EdgePeak& o) {
  edge = std::max(edge, o.edge);
  peak = std::max(peak, o.peak);
  return *this;
}

double boundary_margin(const GridPair& grid, std::span<const Complex> a) { return edge_peak(grid, a).margin(); }
double boundary_margin(const GridPair& grid, std::span<const double> a) { return edge_peak(grid, a).margin(); }

double boundary_margin(const GridPair& grid, const CVecField& v) {
  EdgePeak m;
  for (const auto& c : v) m += edge_peak(grid, c);
  return m.margin();
}

void enforce_margin(double margin, const GradientOptions& opts, const char* what) {
  if (opts.policy == BoundaryPolicy::Ignore || margin <= opts.boundary_tol) return;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.3g of the maximum (tolerance %.3g)", margin, opts.boundary_tol);
  const std::string msg = std::string(what) + ": amplitude near the grid boundary is " + buf;
  if (opts.policy == BoundaryPolicy::Throw) throw BoundaryDecayError(msg);
  std::cerr << "warning: " << msg << '\n';
}

void enforce_boundary_decay(const GridPair& grid, std::span<const Complex> a, const GradientOptions& opts,
                            const char* what) {
  if (opts.policy == BoundaryPolicy::Ignore) return;
  enforce_margin(boundary_margin(grid, a), opts, what);
}

void enforce_boundary_decay(const GridPair& grid, const CVecField& v, const GradientOptions& opts, const char* what) {
  if (opts.policy == BoundaryPolicy::Ignore) return;
  enforce_margin(boundary_margin(grid, v), opts, what);
}

CVecField spectral_gradient_k(const GridPair& grid, std::span<const Complex> a, const GradientOptions& opts) {
  enforce_boundary_decay(grid, a, opts, "k-gradient");
  return {difference_impl(grid, a, 0), difference_impl(grid, a, 1), difference_impl(grid, a, 2)};
}

CArray difference_k(const GridPair& grid, std::span<const Complex> a, int axis) {
  return difference_impl(grid, a, axis);
}

RArray difference_k(const GridPair& grid, std::span<const double> a, int axis) {
  return difference_impl(grid, a, axis);
}

}  // namespace poincare
