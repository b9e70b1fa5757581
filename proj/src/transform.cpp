#include "poincare/transform.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

#include "poincare/kernels.hpp"

namespace poincare {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

// FFTW planning is not thread safe; execution with the new-array interface is.
const PlanPair& plans_for(const std::array<int, 3>& dims) {
  static std::mutex mutex;
  static std::map<std::array<int, 3>, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[dims];
  if (!slot) {
    slot = std::make_unique<PlanPair>();
    const std::size_t n = std::size_t(dims[0]) * dims[1] * dims[2];
    auto* buf = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    slot->forward = fftw_plan_dft_3d(dims[0], dims[1], dims[2], buf, buf, FFTW_FORWARD, flags);
    slot->backward = fftw_plan_dft_3d(dims[0], dims[1], dims[2], buf, buf, FFTW_BACKWARD, flags);
    fftw_free(buf);
  }
  return *slot;
}

// Centered <-> FFT order. For even n both directions are a roll by n/2.
void roll_half(const GridPair& grid, std::span<const Complex> in, std::span<Complex> out) {
  const auto& d = grid.dims();
  kernels::for_each(grid.size(), [&](std::size_t idx) {
    const auto c = grid.coords(idx);
    const std::size_t dst = grid.index((c[0] + d[0] / 2) % d[0], (c[1] + d[1] / 2) % d[1], (c[2] + d[2] / 2) % d[2]);
    out[dst] = in[idx];
  });
}

CArray transform(const GridPair& grid, std::span<const Complex> in, bool forward) {
  if (in.size() != grid.size()) throw GridMismatchError("transform: array size does not match grid");
  CArray work(grid.size());
  roll_half(grid, in, work);
  const auto& plans = plans_for(grid.dims());
  auto* ptr = reinterpret_cast<fftw_complex*>(work.data());
  fftw_execute_dft(forward ? plans.forward : plans.backward, ptr, ptr);
  CArray out(grid.size());
  roll_half(grid, work, out);
  const double two_pi_32 = std::pow(2.0 * kPi, 1.5);
  const double scale = (forward ? grid.dV() : grid.dVk()) / two_pi_32;
  kernels::for_each(out.size(), [&](std::size_t i) { out[i] *= scale; });
  return out;
}

}  // namespace

CArray forward_transform(const GridPair& grid, std::span<const Complex> field_r) {
  return transform(grid, field_r, true);
}

CArray inverse_transform(const GridPair& grid, std::span<const Complex> field_k) {
  return transform(grid, field_k, false);
}

CVecField forward_transform(const GridPair& grid, const CVecField& field_r) {
  return {forward_transform(grid, field_r[0]), forward_transform(grid, field_r[1]),
          forward_transform(grid, field_r[2])};
}

CVecField inverse_transform(const GridPair& grid, const CVecField& field_k) {
  return {inverse_transform(grid, field_k[0]), inverse_transform(grid, field_k[1]),
          inverse_transform(grid, field_k[2])};
}

bool on_nyquist_plane(const GridPair& grid, std::size_t idx) {
  const auto c = grid.coords(idx);
  return c[0] == 0 || c[1] == 0 || c[2] == 0;
}

void multiply_ik(const GridPair& grid, std::span<Complex> field_k, int axis) {
  kernels::for_each(grid.size(), [&](std::size_t idx) {
    const auto c = grid.coords(idx);
    if (c[axis] == 0) {
      field_k[idx] = 0.0;
    } else {
      field_k[idx] *= Complex(0.0, grid.k_axis(axis, c[axis]));
    }
  });
}

CVecField spectral_gradient_r(const GridPair& grid, std::span<const Complex> field_r) {
  const CArray fk = forward_transform(grid, field_r);
  CVecField out;
  for (int a = 0; a < 3; ++a) {
    CArray tmp = fk;
    multiply_ik(grid, tmp, a);
    out[a] = inverse_transform(grid, tmp);
  }
  return out;
}

CVecField spectral_curl_r(const GridPair& grid, const CVecField& field_r) {
  const CVecField fk = forward_transform(grid, field_r);
  CVecField curl_k;
  for (auto& c : curl_k) c.assign(grid.size(), Complex{});
  // (curl F)_a = d_b F_c - d_c F_b for cyclic (a, b, c)
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    CArray t1 = fk[c];
    multiply_ik(grid, t1, b);
    CArray t2 = fk[b];
    multiply_ik(grid, t2, c);
    kernels::for_each(grid.size(), [&](std::size_t i) { curl_k[a][i] = t1[i] - t2[i]; });
  }
  return inverse_transform(grid, curl_k);
}

CArray spectral_divergence_r(const GridPair& grid, const CVecField& field_r) {
  const CVecField fk = forward_transform(grid, field_r);
  CArray div_k(grid.size(), Complex{});
  for (int a = 0; a < 3; ++a) {
    CArray t = fk[a];
    multiply_ik(grid, t, a);
    kernels::for_each(grid.size(), [&](std::size_t i) { div_k[i] += t[i]; });
  }
  return inverse_transform(grid, div_k);
}

CVecField to_complex(const RVecField& v) {
  CVecField out;
  for (int a = 0; a < 3; ++a) out[a].assign(v[a].begin(), v[a].end());
  return out;
}

RVecField real_part(const CVecField& v) {
  RVecField out;
  for (int a = 0; a < 3; ++a) {
    out[a].resize(v[a].size());
    for (std::size_t i = 0; i < v[a].size(); ++i) out[a][i] = v[a][i].real();
  }
  return out;
}

}  // namespace poincare
