#pragma once

// Data-parallel building blocks. Every kernel exists twice: an OpenMP version
// used by the library and a plain serial version kept as the reference for
// tests and benchmarks. Reductions use a fixed pairwise tree over fixed-size
// blocks, so both versions return bit-identical results for any thread count.

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "poincare/types.hpp"

namespace poincare::kernels {

inline constexpr std::size_t kBlockSize = 2048;

namespace detail {

// Pairwise sum of term(first) .. term(last - 1).
template <class T, class F>
T pairwise(std::size_t first, std::size_t last, const F& term) {
  const std::size_t n = last - first;
  if (n <= 16) {
    T acc{};
    for (std::size_t i = first; i < last; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = first + n / 2;
  T left = pairwise<T>(first, mid, term);
  left += pairwise<T>(mid, last, term);
  return left;
}

template <class T>
T pairwise_blocks(const std::vector<T>& blocks) {
  if (blocks.empty()) return T{};
  return pairwise<T>(0, blocks.size(), [&](std::size_t b) { return blocks[b]; });
}

inline std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

}  // namespace detail

namespace serial {

/// Sum of term(i) for i in [0, n) with the deterministic block/pairwise tree.
template <class T, class F>
T tree_sum(std::size_t n, const F& term) {
  const std::size_t nb = detail::block_count(n);
  std::vector<T> blocks(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    blocks[b] = detail::pairwise<T>(b * kBlockSize, std::min(n, (b + 1) * kBlockSize), term);
  }
  return detail::pairwise_blocks(blocks);
}

template <class F>
void for_each(std::size_t n, const F& f) {
  for (std::size_t i = 0; i < n; ++i) f(i);
}

/// Second-order finite difference along one axis of a centered 3-D array
/// (z fastest). Central in the interior, one-sided at both ends.
template <class T>
void difference_along_axis(const std::array<int, 3>& dims, double step, std::span<const T> in,
                           std::span<T> out, int axis) {
  const std::size_t stride = axis == 0 ? std::size_t(dims[1]) * dims[2] : axis == 1 ? std::size_t(dims[2]) : 1;
  const int n = dims[axis];
  const double inv2h = 0.5 / step;
  for (std::size_t idx = 0; idx < in.size(); ++idx) {
    const int pos = int((idx / stride) % std::size_t(n));
    if (pos == 0) {
      out[idx] = (-3.0 * in[idx] + 4.0 * in[idx + stride] - in[idx + 2 * stride]) * inv2h;
    } else if (pos == n - 1) {
      out[idx] = (3.0 * in[idx] - 4.0 * in[idx - stride] + in[idx - 2 * stride]) * inv2h;
    } else {
      out[idx] = (in[idx + stride] - in[idx - stride]) * inv2h;
    }
  }
}

}  // namespace serial

template <class T, class F>
T tree_sum(std::size_t n, const F& term) {
  const std::size_t nb = detail::block_count(n);
  std::vector<T> blocks(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < std::ptrdiff_t(nb); ++b) {
    const std::size_t first = std::size_t(b) * kBlockSize;
    blocks[std::size_t(b)] = detail::pairwise<T>(first, std::min(n, first + kBlockSize), term);
  }
  return detail::pairwise_blocks(blocks);
}

template <class F>
void for_each(std::size_t n, const F& f) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) f(std::size_t(i));
}

template <class T>
void difference_along_axis(const std::array<int, 3>& dims, double step, std::span<const T> in,
                           std::span<T> out, int axis) {
  const std::size_t stride = axis == 0 ? std::size_t(dims[1]) * dims[2] : axis == 1 ? std::size_t(dims[2]) : 1;
  const int n = dims[axis];
  const double inv2h = 0.5 / step;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(in.size()); ++i) {
    const std::size_t idx = std::size_t(i);
    const int pos = int((idx / stride) % std::size_t(n));
    if (pos == 0) {
      out[idx] = (-3.0 * in[idx] + 4.0 * in[idx + stride] - in[idx + 2 * stride]) * inv2h;
    } else if (pos == n - 1) {
      out[idx] = (3.0 * in[idx] - 4.0 * in[idx - stride] + in[idx - 2 * stride]) * inv2h;
    } else {
      out[idx] = (in[idx + stride] - in[idx - stride]) * inv2h;
    }
  }
}

/// Number of worker threads the parallel kernels will use.
int worker_count();

/// Caps the worker count (0 restores the default).
void set_worker_count(int n);

}  // namespace poincare::kernels
