#include "poincare/photon_state.hpp"

#include "poincare/kernels.hpp"

namespace poincare {

namespace {

CArray materialize(const GridPair& grid, const CArray& g0, double t) {
  if (t == 0.0) return g0;
  CArray out(g0.size());
  const auto& w = grid.omega();
  kernels::for_each(g0.size(), [&](std::size_t i) { out[i] = std::polar(1.0, -w[i] * t) * g0[i]; });
  return out;
}

void require_compatible(const PhotonWaveFunction& a, const PhotonWaveFunction& b, const char* what) {
  require_same_grid(a.grid(), b.grid(), what);
  if (a.time() != b.time()) throw std::invalid_argument(std::string(what) + ": states at different times");
}

}  // namespace

PhotonWaveFunction::PhotonWaveFunction(BasisPtr basis, CArray left, CArray right, double time)
    : basis_(std::move(basis)), left_(std::move(left)), right_(std::move(right)), time_(time) {
  if (!basis_) throw std::invalid_argument("wavefunction: null basis");
  const std::size_t n = basis_->grid->size();
  if (left_.size() != n || right_.size() != n) throw GridMismatchError("wavefunction: amplitude size does not match grid");
  const std::size_t z = basis_->grid->zero_index();
  left_[z] = 0.0;
  right_[z] = 0.0;
}

PhotonWaveFunction PhotonWaveFunction::zero(BasisPtr basis, double time) {
  const std::size_t n = basis->grid->size();
  return PhotonWaveFunction(std::move(basis), CArray(n), CArray(n), time);
}

CArray PhotonWaveFunction::left() const { return materialize(grid(), left_, time_); }
CArray PhotonWaveFunction::right() const { return materialize(grid(), right_, time_); }

PhotonWaveFunction& PhotonWaveFunction::operator+=(const PhotonWaveFunction& other) {
  require_compatible(*this, other, "wavefunction +");
  kernels::for_each(left_.size(), [&](std::size_t i) {
    left_[i] += other.left_[i];
    right_[i] += other.right_[i];
  });
  return *this;
}

PhotonWaveFunction& PhotonWaveFunction::operator-=(const PhotonWaveFunction& other) {
  require_compatible(*this, other, "wavefunction -");
  kernels::for_each(left_.size(), [&](std::size_t i) {
    left_[i] -= other.left_[i];
    right_[i] -= other.right_[i];
  });
  return *this;
}

PhotonWaveFunction& PhotonWaveFunction::operator*=(Complex s) {
  kernels::for_each(left_.size(), [&](std::size_t i) {
    left_[i] *= s;
    right_[i] *= s;
  });
  return *this;
}

PhotonWaveFunction operator+(PhotonWaveFunction a, const PhotonWaveFunction& b) { return a += b; }
PhotonWaveFunction operator-(PhotonWaveFunction a, const PhotonWaveFunction& b) { return a -= b; }
PhotonWaveFunction operator*(Complex s, PhotonWaveFunction a) { return a *= s; }

Complex scalar_product(const PhotonWaveFunction& a, const PhotonWaveFunction& b) {
  require_same_grid(a.grid(), b.grid(), "scalar_product");
  const GridPair& grid = a.grid();
  const auto& w = grid.invariant_weight();
  const auto& omega = grid.omega();
  const double dt = a.time() - b.time();
  const auto& la = a.left0();
  const auto& ra = a.right0();
  const auto& lb = b.left0();
  const auto& rb = b.right0();
  return kernels::tree_sum<Complex>(grid.size(), [&](std::size_t i) {
    const Complex s = std::conj(la[i]) * lb[i] + std::conj(ra[i]) * rb[i];
    return dt == 0.0 ? w[i] * s : w[i] * std::polar(1.0, omega[i] * dt) * s;
  });
}

double photon_number(const PhotonWaveFunction& wf) {
  const GridPair& grid = wf.grid();
  const auto& w = grid.invariant_weight();
  const auto& l = wf.left0();
  const auto& r = wf.right0();
  return kernels::tree_sum<double>(grid.size(), [&](std::size_t i) { return w[i] * (std::norm(l[i]) + std::norm(r[i])); });
}

PhotonWaveFunction apply_helicity(const PhotonWaveFunction& wf) {
  CArray r = wf.right0();
  for (auto& v : r) v = -v;
  return PhotonWaveFunction(wf.basis_ptr(), wf.left0(), std::move(r), wf.time());
}

PhotonWaveFunction evolve(const PhotonWaveFunction& wf, double t) {
  return PhotonWaveFunction(wf.basis_ptr(), wf.left0(), wf.right0(), wf.time() + t);
}

PhotonWaveFunction transform_amplitudes(const PhotonWaveFunction& wf, BasisPtr new_basis,
                                        std::span<const double> phase) {
  require_same_grid(wf.grid(), *new_basis->grid, "transform_amplitudes");
  if (phase.size() != wf.grid().size()) throw GridMismatchError("transform_amplitudes: phase field does not match grid");
  CArray l(wf.left0().size());
  CArray r(wf.right0().size());
  kernels::for_each(l.size(), [&](std::size_t i) {
    const Complex p = std::polar(1.0, phase[i]);
    l[i] = p * wf.left0()[i];
    r[i] = std::conj(p) * wf.right0()[i];
  });
  return PhotonWaveFunction(std::move(new_basis), std::move(l), std::move(r), wf.time());
}

double boundary_margin(const PhotonWaveFunction& wf) {
  // one scale for both helicities: an empty component must not count its rounding noise
  EdgePeak m = edge_peak(wf.grid(), std::span<const Complex>(wf.left0()));
  m += edge_peak(wf.grid(), std::span<const Complex>(wf.right0()));
  return m.margin();
}

void enforce_boundary_decay(const PhotonWaveFunction& wf, const GradientOptions& opts, const char* what) {
  if (opts.policy == BoundaryPolicy::Ignore) return;
  enforce_margin(boundary_margin(wf), opts, what);
}

CArray covariant_component(const PolarizationBasis& basis, int chi, std::span<const Complex> g0, double time,
                           int axis, const CovariantOptions& opts) {
  const GridPair& grid = *basis.grid;
  const std::size_t n = grid.size();
  CArray out(n);
  if (opts.stencil == CovariantStencil::Link) {
    // e_chi = e for L, e^* for R; a flipped connection sign swaps them.
    const bool use_conj = (chi > 0) != (opts.connection_sign > 0);
    auto ech = [&](int m, std::size_t i) { return use_conj ? std::conj(basis.e[m][i]) : basis.e[m][i]; };
    CVecField v;
    for (int m = 0; m < 3; ++m) {
      v[m].resize(n);
      kernels::for_each(n, [&](std::size_t i) { v[m][i] = ech(m, i) * g0[i]; });
    }
    CVecField dv{difference_k(grid, v[0], axis), difference_k(grid, v[1], axis), difference_k(grid, v[2], axis)};
    kernels::for_each(n, [&](std::size_t i) {
      out[i] = std::conj(ech(0, i)) * dv[0][i] + std::conj(ech(1, i)) * dv[1][i] + std::conj(ech(2, i)) * dv[2][i];
    });
  } else {
    out = difference_k(grid, g0, axis);
    const auto& alpha = basis.alpha[axis];
    const double s = chi * opts.connection_sign;
    kernels::for_each(n, [&](std::size_t i) { out[i] -= kI * s * alpha[i] * g0[i]; });
  }
  if (time != 0.0) {
    // d/dk e^{-i omega t} = -i t c n e^{-i omega t}
    const double ct = grid.units().c * time;
    const auto& nk = grid.unit_k()[axis];
    kernels::for_each(n, [&](std::size_t i) { out[i] -= kI * ct * nk[i] * g0[i]; });
  }
  out[grid.zero_index()] = 0.0;
  return out;
}

std::array<PhotonWaveFunction, 3> covariant_derivative(const PhotonWaveFunction& wf, const CovariantOptions& opts) {
  enforce_boundary_decay(wf, opts.gradient, "covariant_derivative");
  auto component = [&](int axis) {
    return PhotonWaveFunction(wf.basis_ptr(), covariant_component(wf.basis(), +1, wf.left0(), wf.time(), axis, opts),
                              covariant_component(wf.basis(), -1, wf.right0(), wf.time(), axis, opts), wf.time());
  };
  return {component(0), component(1), component(2)};
}

}  // namespace poincare
