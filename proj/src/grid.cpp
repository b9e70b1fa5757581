#include "poincare/grid.hpp"

#include <omp.h>

#include <atomic>
#include <string>

#include "poincare/kernels.hpp"

namespace poincare {

namespace kernels {

namespace {
std::atomic<int> g_default_threads{0};
}

int worker_count() { return omp_get_max_threads(); }

void set_worker_count(int n) {
  if (g_default_threads.load() == 0) g_default_threads = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : g_default_threads.load());
}

}  // namespace kernels

GridPair::GridPair(std::array<int, 3> dims, Vec3 spacing, Units units)
    : dims_(dims), spacing_(spacing), units_(units) {
  for (int a = 0; a < 3; ++a) {
    if (dims[a] % 2 != 0) throw std::invalid_argument("grid: odd dimension " + std::to_string(dims[a]));
    if (dims[a] < 8) throw std::invalid_argument("grid: dimension below 8: " + std::to_string(dims[a]));
    if (!(spacing[a] > 0.0)) throw std::invalid_argument("grid: spacing must be positive");
  }
  units.validate();
  for (int a = 0; a < 3; ++a) dk_[a] = 2.0 * kPi / (dims[a] * spacing[a]);
  size_ = std::size_t(dims[0]) * dims[1] * dims[2];
  dV_ = spacing[0] * spacing[1] * spacing[2];
  dVk_ = dk_[0] * dk_[1] * dk_[2];
  zero_index_ = index(dims[0] / 2, dims[1] / 2, dims[2] / 2);

  kmag_.resize(size_);
  omega_.resize(size_);
  invariant_weight_.resize(size_);
  for (auto& c : unit_k_) c.resize(size_);
  kernels::for_each(size_, [&](std::size_t idx) {
    const Vec3 kv = k(idx);
    const double km = norm(kv);
    kmag_[idx] = km;
    omega_[idx] = units_.c * km;
    if (idx == zero_index_) {
      unit_k_[0][idx] = 0.0;
      unit_k_[1][idx] = 0.0;
      unit_k_[2][idx] = 1.0;
      invariant_weight_[idx] = 0.0;
    } else {
      for (int a = 0; a < 3; ++a) unit_k_[a][idx] = kv[a] / km;
      invariant_weight_[idx] = dVk_ / (units_.hbar * omega_[idx]);
    }
  });
}

Vec3 GridPair::box_length() const {
  return {dims_[0] * spacing_[0], dims_[1] * spacing_[1], dims_[2] * spacing_[2]};
}

std::array<int, 3> GridPair::coords(std::size_t idx) const {
  const int l = int(idx % std::size_t(dims_[2]));
  const std::size_t rest = idx / std::size_t(dims_[2]);
  const int j = int(rest % std::size_t(dims_[1]));
  const int i = int(rest / std::size_t(dims_[1]));
  return {i, j, l};
}

Vec3 GridPair::r(std::size_t idx) const {
  const auto c = coords(idx);
  return {r_axis(0, c[0]), r_axis(1, c[1]), r_axis(2, c[2])};
}

Vec3 GridPair::k(std::size_t idx) const {
  const auto c = coords(idx);
  return {k_axis(0, c[0]), k_axis(1, c[1]), k_axis(2, c[2])};
}

bool GridPair::same_layout(const GridPair& other) const {
  return this == &other || (dims_ == other.dims_ && spacing_ == other.spacing_ && units_ == other.units_);
}

GridPtr make_grid(std::array<int, 3> dims, Vec3 spacing, Units units) {
  return std::make_shared<const GridPair>(dims, spacing, units);
}

GridPtr make_grid(int n, double spacing, Units units) {
  return make_grid({n, n, n}, {spacing, spacing, spacing}, units);
}

void require_same_grid(const GridPair& a, const GridPair& b, const char* what) {
  if (!a.same_layout(b)) throw GridMismatchError(std::string(what) + ": grid mismatch");
}

}  // namespace poincare
