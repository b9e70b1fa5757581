#include "poincare/observables.hpp"

#include <algorithm>

#include "poincare/kernels.hpp"
#include "poincare/transform.hpp"

namespace poincare {

namespace {

struct Acc3 {
  Vec3 v{};
  Acc3& operator+=(const Acc3& o) {
    v += o.v;
    return *this;
  }
};

// Real and imaginary parts of a complex 3-vector sum plus a magnitude scale.
struct CAcc3 {
  Vec3 re{};
  Vec3 im{};
  double scale = 0.0;
  CAcc3& operator+=(const CAcc3& o) {
    re += o.re;
    im += o.im;
    scale += o.scale;
    return *this;
  }
};

template <class F>
Vec3 sum3(std::size_t n, const F& f) {
  return kernels::tree_sum<Acc3>(n, [&](std::size_t i) { return Acc3{f(i)}; }).v;
}

void require_role(const RealVectorField& f, FieldRole role, const char* what) {
  if (f.role != role) throw std::invalid_argument(std::string(what) + ": unexpected field role");
}

// Cell integral of 1/(4 pi |r|) over one grid cell centred on the origin.
double self_cell_integral(const Vec3& h) {
  if (h[0] == h[1] && h[1] == h[2]) return 0.18940053870923706 * h[0] * h[0];
  // equal-volume ball
  const double R = std::cbrt(3.0 * h[0] * h[1] * h[2] / (4.0 * kPi));
  return 0.5 * R * R;
}

std::array<int, 3> rotate_coords(const std::array<int, 3>& c, int axis) {
  // one quarter turn: (R v)_b = -v_c, (R v)_c = v_b
  const int b = (axis + 1) % 3;
  const int cc = (axis + 2) % 3;
  std::array<int, 3> out = c;
  out[b] = -c[cc];
  out[cc] = c[b];
  return out;
}

}  // namespace

GeneratorSet generators_field_picture(const RSField& field, const FieldPictureOptions& opts) {
  const GridPair& grid = *field.grid;
  const std::size_t n = grid.size();
  const double dV = grid.dV();
  const auto& F = field.F;
  GeneratorSet out;
  out.H = dV * kernels::tree_sum<double>(n, [&](std::size_t i) {
            return std::norm(F[0][i]) + std::norm(F[1][i]) + std::norm(F[2][i]);
          });
  const double inv_c = 1.0 / grid.units().c;
  // momentum density eps0 E x B = Im(F^* x F) / c
  auto density = [&](std::size_t i) {
    const CVec3 f{F[0][i], F[1][i], F[2][i]};
    const CVec3 s = cross(conj(f), f);
    return Vec3{inv_c * s[0].imag(), inv_c * s[1].imag(), inv_c * s[2].imag()};
  };
  out.P = dV * sum3(n, density);
  if (opts.skip_moments) return out;
  enforce_boundary_decay(grid, F, opts.boundary, "field-picture moments");
  out.J = dV * sum3(n, [&](std::size_t i) { return cross(grid.r(i), density(i)); });
  out.K = dV * sum3(n, [&](std::size_t i) {
            return (std::norm(F[0][i]) + std::norm(F[1][i]) + std::norm(F[2][i])) * grid.r(i);
          });
  return out;
}

AngularSplit split_angular_momentum(const PhotonWaveFunction& wf, const CovariantOptions& opts) {
  const GridPair& grid = wf.grid();
  const std::size_t n = grid.size();
  enforce_boundary_decay(wf, opts.gradient, "split_angular_momentum");
  const auto& omega = grid.omega();
  const double dVk = grid.dVk();
  AngularSplit out;
  out.diag.boundary_margin = boundary_margin(wf);

  out.Js = dVk * sum3(n, [&](std::size_t i) {
             if (grid.excluded(i)) return Vec3{};
             const double w = (std::norm(wf.left0()[i]) - std::norm(wf.right0()[i])) / omega[i];
             return w * grid.unit_k(i);
           });

  // orbital integrand on G = g / sqrt(omega)
  std::array<CArray, 2> G;
  std::array<CVecField, 2> DG;
  for (int s = 0; s < 2; ++s) {
    const int chi = s == 0 ? 1 : -1;
    const CArray& g = wf.component0(chi);
    G[s].resize(n);
    kernels::for_each(n, [&](std::size_t i) { G[s][i] = grid.excluded(i) ? Complex{} : g[i] / std::sqrt(omega[i]); });
    for (int a = 0; a < 3; ++a) DG[s][a] = covariant_component(wf.basis(), chi, G[s], wf.time(), a, opts);
  }
  auto integrand = [&](std::size_t i) {
    const Vec3 k = grid.k(i);
    const CVec3 kc{k[0], k[1], k[2]};
    CVec3 j{};
    for (int s = 0; s < 2; ++s) {
      const CVec3 dg{DG[s][0][i], DG[s][1][i], DG[s][2][i]};
      const CVec3 kxd = cross(kc, dg);
      for (int a = 0; a < 3; ++a) j[a] += std::conj(G[s][i]) * (-kI) * kxd[a];
    }
    return j;
  };
  const CAcc3 jo = kernels::tree_sum<CAcc3>(n, [&](std::size_t i) {
    const CVec3 j = integrand(i);
    CAcc3 r;
    for (int a = 0; a < 3; ++a) {
      r.re[a] = j[a].real();
      r.im[a] = j[a].imag();
    }
    r.scale = std::sqrt(std::norm(j[0]) + std::norm(j[1]) + std::norm(j[2]));
    return r;
  });
  out.Jo = dVk * jo.re;
  out.diag.imag_orbital = jo.scale > 0.0 ? norm(jo.im) / jo.scale : 0.0;

  std::vector<double> par(n, 0.0);
  kernels::for_each(n, [&](std::size_t i) {
    if (grid.excluded(i)) return;
    const CVec3 j = integrand(i);
    const Vec3 re{j[0].real(), j[1].real(), j[2].real()};
    const double m = norm(re);
    if (m > 0.0) par[i] = std::abs(dot(grid.unit_k(i), re)) / m;
  });
  // only points carrying a non-negligible share of the integrand
  double peak = 0.0;
  std::vector<double> mag(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const CVec3 j = integrand(i);
    mag[i] = std::sqrt(std::norm(j[0]) + std::norm(j[1]) + std::norm(j[2]));
    peak = std::max(peak, mag[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (mag[i] > 1e-6 * peak) out.diag.orbital_parallel = std::max(out.diag.orbital_parallel, par[i]);
  }
  return out;
}

PhotonGenerators generators_photon_picture(const PhotonWaveFunction& wf, const CovariantOptions& opts) {
  const GridPair& grid = wf.grid();
  const std::size_t n = grid.size();
  const auto& omega = grid.omega();
  const double dVk = grid.dVk();
  const auto& gl = wf.left0();
  const auto& gr = wf.right0();
  PhotonGenerators out;
  GeneratorSet& s = out.set;
  s.N = photon_number(wf);
  s.H = dVk * kernels::tree_sum<double>(n, [&](std::size_t i) { return std::norm(gl[i]) + std::norm(gr[i]); });
  s.P = dVk * sum3(n, [&](std::size_t i) {
          if (grid.excluded(i)) return Vec3{};
          return ((std::norm(gl[i]) + std::norm(gr[i])) / omega[i]) * grid.k(i);
        });

  AngularSplit split = split_angular_momentum(wf, opts);
  s.Jo = split.Jo;
  s.Js = split.Js;
  s.J = split.Jo + split.Js;
  out.diag = split.diag;

  // K = Re sum dVk g^* i D g (omega cancels against the measure)
  std::array<CVecField, 2> D;
  for (int a = 0; a < 3; ++a) {
    D[0][a] = covariant_component(wf.basis(), +1, gl, wf.time(), a, opts);
    D[1][a] = covariant_component(wf.basis(), -1, gr, wf.time(), a, opts);
  }
  const CAcc3 k = kernels::tree_sum<CAcc3>(n, [&](std::size_t i) {
    CAcc3 r;
    for (int a = 0; a < 3; ++a) {
      const Complex v = std::conj(gl[i]) * kI * D[0][a][i] + std::conj(gr[i]) * kI * D[1][a][i];
      r.re[a] = v.real();
      r.im[a] = v.imag();
      r.scale += std::abs(v);
    }
    return r;
  });
  s.K = dVk * k.re;
  out.diag.imag_boost = k.scale > 0.0 ? norm(k.im) / k.scale : 0.0;
  return out;
}

AngularSplit darwin_split(const SpectralEField& ek, const GradientOptions& opts) {
  const GridPair& grid = *ek.grid;
  const std::size_t n = grid.size();
  enforce_boundary_decay(grid, ek.E, opts, "darwin_split");
  const double lon = longitudinal_fraction(ek);
  if (lon > 1e-6) throw NonRadiativeError("darwin_split: longitudinal component in E(k)");
  const double eps0 = grid.units().eps0;
  const double c = grid.units().c;
  const double pre = 2.0 * eps0 * grid.dVk() / c;
  const auto& km = grid.kmag();
  AngularSplit out;
  out.Js = pre * sum3(n, [&](std::size_t i) {
             if (grid.excluded(i)) return Vec3{};
             const CVec3 e{ek.E[0][i], ek.E[1][i], ek.E[2][i]};
             const CVec3 s = cross(conj(e), e);
             return (1.0 / km[i]) * Vec3{s[0].imag(), s[1].imag(), s[2].imag()};
           });
  CVecField U;
  std::array<CVecField, 3> dU;  // dU[i][axis]
  for (int a = 0; a < 3; ++a) {
    U[a].resize(n);
    kernels::for_each(n, [&](std::size_t i) { U[a][i] = grid.excluded(i) ? Complex{} : ek.E[a][i] / std::sqrt(km[i]); });
    for (int ax = 0; ax < 3; ++ax) dU[a][ax] = difference_k(grid, U[a], ax);
  }
  const CAcc3 jo = kernels::tree_sum<CAcc3>(n, [&](std::size_t i) {
    CAcc3 r;
    if (grid.excluded(i)) return r;
    const Vec3 k = grid.k(i);
    const CVec3 kc{k[0], k[1], k[2]};
    CVec3 acc{};
    for (int a = 0; a < 3; ++a) {
      const CVec3 g{dU[a][0][i], dU[a][1][i], dU[a][2][i]};
      const CVec3 kxg = cross(kc, g);
      for (int l = 0; l < 3; ++l) acc[l] += std::conj(U[a][i]) * (-kI) * kxg[l];
    }
    for (int l = 0; l < 3; ++l) {
      r.re[l] = acc[l].real();
      r.im[l] = acc[l].imag();
    }
    r.scale = std::sqrt(std::norm(acc[0]) + std::norm(acc[1]) + std::norm(acc[2]));
    return r;
  });
  out.Jo = pre * jo.re;
  out.diag.imag_orbital = jo.scale > 0.0 ? norm(jo.im) / jo.scale : 0.0;
  return out;
}

AngularSplit textbook_split(const RealVectorField& E, const RealVectorField& A) {
  require_role(E, FieldRole::E, "textbook_split");
  require_role(A, FieldRole::A, "textbook_split");
  require_same_grid(*E.grid, *A.grid, "textbook_split");
  const GridPair& grid = *E.grid;
  const std::size_t n = grid.size();
  const CVecField ac = to_complex(A.v);
  if (relative_divergence(grid, ac) > 1e-6) throw std::invalid_argument("textbook_split: A is not transverse");
  const double pre = grid.units().eps0 * grid.dV();
  AngularSplit out;
  out.Js = pre * sum3(n, [&](std::size_t i) {
             return cross(Vec3{E.v[0][i], E.v[1][i], E.v[2][i]}, Vec3{A.v[0][i], A.v[1][i], A.v[2][i]});
           });
  std::array<CVecField, 3> grad;  // grad[component][axis]
  for (int a = 0; a < 3; ++a) grad[a] = spectral_gradient_r(grid, ac[a]);
  out.Jo = pre * sum3(n, [&](std::size_t i) {
             const Vec3 r = grid.r(i);
             Vec3 acc{};
             for (int a = 0; a < 3; ++a) {
               const Vec3 g{grad[a][0][i].real(), grad[a][1][i].real(), grad[a][2][i].real()};
               acc += E.v[a][i] * cross(r, g);
             }
             return acc;
           });
  return out;
}

namespace {

template <bool Parallel>
RVecField nonlocal_potential_impl(const GridPair& grid, const RVecField& source) {
  const std::size_t n = grid.size();
  const double dV = grid.dV();
  const double self = self_cell_integral(grid.spacing());
  const double inv4pi = 1.0 / (4.0 * kPi);
  RVecField out;
  for (auto& c : out) c.assign(n, 0.0);
  auto row = [&](std::size_t i) {
    const Vec3 ri = grid.r(i);
    Vec3 acc{};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = inv4pi / norm(ri - grid.r(j));
      acc += w * Vec3{source[0][j], source[1][j], source[2][j]};
    }
    for (int a = 0; a < 3; ++a) out[a][i] = dV * acc[a] + self * source[a][i];
  };
  if constexpr (Parallel) {
    kernels::for_each(n, row);
  } else {
    kernels::serial::for_each(n, row);
  }
  return out;
}

}  // namespace

RVecField nonlocal_potential(const GridPair& grid, const RVecField& source) {
  return nonlocal_potential_impl<true>(grid, source);
}

RVecField serial::nonlocal_potential(const GridPair& grid, const RVecField& source) {
  return nonlocal_potential_impl<false>(grid, source);
}

Vec3 spin_nonlocal_real(const RealVectorField& E, const RealVectorField& B) {
  require_role(E, FieldRole::E, "spin_nonlocal_real");
  require_role(B, FieldRole::B, "spin_nonlocal_real");
  require_same_grid(*E.grid, *B.grid, "spin_nonlocal_real");
  const GridPair& grid = *E.grid;
  if (grid.size() > kNonlocalMaxPoints) {
    throw CostGuardError("spin_nonlocal_real: grid of " + std::to_string(grid.size()) +
                         " points exceeds the direct-sum limit of " + std::to_string(kNonlocalMaxPoints));
  }
  const RVecField curl_b = real_part(spectral_curl_r(grid, to_complex(B.v)));
  const RVecField A = nonlocal_potential(grid, curl_b);
  const double pre = grid.units().eps0 * grid.dV();
  return pre * sum3(grid.size(), [&](std::size_t i) {
           return cross(Vec3{E.v[0][i], E.v[1][i], E.v[2][i]}, Vec3{A[0][i], A[1][i], A[2][i]});
         });
}

Vec3 rotate_vector(const Vec3& v, int axis, int turns) {
  const int t = ((turns % 4) + 4) % 4;
  const int b = (axis + 1) % 3;
  const int c = (axis + 2) % 3;
  Vec3 out = v;
  for (int s = 0; s < t; ++s) {
    const Vec3 prev = out;
    out[b] = -prev[c];
    out[c] = prev[b];
  }
  return out;
}

PhotonWaveFunction rotate_quarter_turns(const PhotonWaveFunction& wf, int axis, int turns) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("rotate: axis must be 0, 1 or 2");
  const GridPair& grid = wf.grid();
  const auto& d = grid.dims();
  const Vec3& h = grid.spacing();
  if (d[0] != d[1] || d[1] != d[2] || h[0] != h[1] || h[1] != h[2]) {
    throw std::invalid_argument("rotate: cubic grid with equal spacings required");
  }
  const int t = ((turns % 4) + 4) % 4;
  const std::size_t n = grid.size();
  const int half = d[0] / 2;
  const PolarizationBasis& basis = wf.basis();
  // Cartesian amplitude V = e g_L + e^* g_R
  CVecField V;
  for (int a = 0; a < 3; ++a) {
    V[a].resize(n);
    kernels::for_each(n, [&](std::size_t i) {
      V[a][i] = basis.e[a][i] * wf.left0()[i] + std::conj(basis.e[a][i]) * wf.right0()[i];
    });
  }
  for (int s = 0; s < t; ++s) {
    CVecField W;
    for (auto& c : W) c.assign(n, Complex{});
    // W(R k) = R V(k)
    kernels::for_each(n, [&](std::size_t i) {
      auto c = grid.coords(i);
      std::array<int, 3> rel{c[0] - half, c[1] - half, c[2] - half};
      const auto rot = rotate_coords(rel, axis);
      std::array<int, 3> dst{};
      for (int a = 0; a < 3; ++a) {
        dst[a] = rot[a] + half;
        if (dst[a] < 0 || dst[a] >= d[a]) return;
      }
      const std::size_t j = grid.index(dst[0], dst[1], dst[2]);
      const int b = (axis + 1) % 3;
      const int cc = (axis + 2) % 3;
      W[axis][j] = V[axis][i];
      W[b][j] = -V[cc][i];
      W[cc][j] = V[b][i];
    });
    V = std::move(W);
  }
  CArray gl(n);
  CArray gr(n);
  kernels::for_each(n, [&](std::size_t i) {
    Complex l{};
    Complex r{};
    for (int a = 0; a < 3; ++a) {
      l += std::conj(basis.e[a][i]) * V[a][i];
      r += basis.e[a][i] * V[a][i];
    }
    gl[i] = l;
    gr[i] = r;
  });
  return PhotonWaveFunction(wf.basis_ptr(), std::move(gl), std::move(gr), wf.time());
}

}  // namespace poincare
