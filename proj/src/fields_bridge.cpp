#include "poincare/fields_bridge.hpp"

#include "poincare/kernels.hpp"
#include "poincare/transform.hpp"

namespace poincare {

namespace {

double field_norm2(const CVecField& f) {
  return kernels::tree_sum<double>(f[0].size(), [&](std::size_t i) {
    return std::norm(f[0][i]) + std::norm(f[1][i]) + std::norm(f[2][i]);
  });
}

void require_role(const RealVectorField& f, FieldRole role, const char* what) {
  if (f.role != role) throw std::invalid_argument(std::string(what) + ": unexpected field role");
}

// i k x B(k) with the Nyquist planes dropped.
CVecField ik_cross(const GridPair& grid, const CVecField& bk) {
  CVecField out;
  for (auto& c : out) c.resize(grid.size());
  kernels::for_each(grid.size(), [&](std::size_t i) {
    if (on_nyquist_plane(grid, i)) {
      for (int a = 0; a < 3; ++a) out[a][i] = 0.0;
      return;
    }
    const Vec3 k = grid.k(i);
    const CVec3 b{bk[0][i], bk[1][i], bk[2][i]};
    const CVec3 kc{k[0], k[1], k[2]};
    const CVec3 kxb = cross(kc, b);
    for (int a = 0; a < 3; ++a) out[a][i] = kI * kxb[a];
  });
  return out;
}

}  // namespace

RSField synthesize(const PhotonWaveFunction& wf, double t) {
  const GridPair& grid = wf.grid();
  const PolarizationBasis& basis = wf.basis();
  const double time = wf.time() + t;
  const auto& omega = grid.omega();
  CVecField left_k;
  CVecField right_k;
  for (int a = 0; a < 3; ++a) {
    left_k[a].resize(grid.size());
    right_k[a].resize(grid.size());
  }
  kernels::for_each(grid.size(), [&](std::size_t i) {
    const Complex phase = std::polar(1.0, -omega[i] * time);
    const Complex gl = phase * wf.left0()[i];
    const Complex gr = phase * wf.right0()[i];
    for (int a = 0; a < 3; ++a) {
      left_k[a][i] = basis.e[a][i] * gl;
      right_k[a][i] = std::conj(basis.e[a][i]) * gr;
    }
  });
  const CVecField fl = inverse_transform(grid, left_k);
  const CVecField fr = inverse_transform(grid, right_k);
  RSField out{wf.grid_ptr(), {}, time};
  for (int a = 0; a < 3; ++a) {
    out.F[a].resize(grid.size());
    kernels::for_each(grid.size(), [&](std::size_t i) { out.F[a][i] = fl[a][i] + std::conj(fr[a][i]); });
  }
  return out;
}

std::pair<RealVectorField, RealVectorField> electric_magnetic(const RSField& field) {
  const Units& u = field.grid->units();
  const double s = std::sqrt(2.0 / u.eps0);
  RealVectorField E{field.grid, {}, FieldRole::E, field.time};
  RealVectorField B{field.grid, {}, FieldRole::B, field.time};
  for (int a = 0; a < 3; ++a) {
    E.v[a].resize(field.F[a].size());
    B.v[a].resize(field.F[a].size());
    for (std::size_t i = 0; i < field.F[a].size(); ++i) {
      E.v[a][i] = s * field.F[a][i].real();
      B.v[a][i] = s * field.F[a][i].imag() / u.c;
    }
  }
  return {std::move(E), std::move(B)};
}

RSField rs_from_fields(const RealVectorField& E, const RealVectorField& B) {
  require_same_grid(*E.grid, *B.grid, "rs_from_fields");
  const Units& u = E.grid->units();
  const double s = std::sqrt(u.eps0 / 2.0);
  RSField out{E.grid, {}, E.time};
  for (int a = 0; a < 3; ++a) {
    out.F[a].resize(E.v[a].size());
    for (std::size_t i = 0; i < E.v[a].size(); ++i) out.F[a][i] = s * Complex(E.v[a][i], u.c * B.v[a][i]);
  }
  return out;
}

SpectralEField spectral_e_field(const RealVectorField& E, const RealVectorField& B) {
  require_role(E, FieldRole::E, "spectral_e_field");
  require_role(B, FieldRole::B, "spectral_e_field");
  require_same_grid(*E.grid, *B.grid, "spectral_e_field");
  const GridPair& grid = *E.grid;
  const CVecField ek_full = forward_transform(grid, to_complex(E.v));
  const CVecField curl_b = ik_cross(grid, forward_transform(grid, to_complex(B.v)));
  const double c = grid.units().c;
  const double t = E.time;
  SpectralEField out{E.grid, {}, E.time};
  for (int a = 0; a < 3; ++a) {
    out.E[a].resize(grid.size());
    kernels::for_each(grid.size(), [&](std::size_t i) {
      if (grid.excluded(i)) {
        out.E[a][i] = 0.0;
        return;
      }
      const Complex undo = t == 0.0 ? Complex(1.0) : std::polar(1.0, grid.omega()[i] * t);
      out.E[a][i] = 0.5 * undo * (ek_full[a][i] + kI * c / grid.kmag()[i] * curl_b[a][i]);
    });
  }
  return out;
}

SpectralEField spectral_e_field(const PhotonWaveFunction& wf) {
  const GridPair& grid = wf.grid();
  const double s = 1.0 / std::sqrt(2.0 * grid.units().eps0);
  const CArray& gl = wf.left0();
  const CArray& gr = wf.right0();
  SpectralEField out{wf.grid_ptr(), {}, wf.time()};
  for (int a = 0; a < 3; ++a) {
    out.E[a].resize(grid.size());
    kernels::for_each(grid.size(), [&](std::size_t i) {
      const Complex e = wf.basis().e[a][i];
      out.E[a][i] = s * (e * gl[i] + std::conj(e) * gr[i]);
    });
  }
  return out;
}

double longitudinal_fraction(const SpectralEField& ek) {
  const GridPair& grid = *ek.grid;
  const auto& nk = grid.unit_k();
  const double lon = kernels::tree_sum<double>(grid.size(), [&](std::size_t i) {
    if (grid.excluded(i)) return 0.0;
    return std::norm(nk[0][i] * ek.E[0][i] + nk[1][i] * ek.E[1][i] + nk[2][i] * ek.E[2][i]);
  });
  const double all = field_norm2(ek.E);
  return all > 0.0 ? std::sqrt(lon / all) : 0.0;
}

PhotonWaveFunction analyze(const SpectralEField& ek, BasisPtr basis, const AnalyzeOptions& opts) {
  const GridPair& grid = *ek.grid;
  require_same_grid(grid, *basis->grid, "analyze");
  const double lon = longitudinal_fraction(ek);
  if (lon > opts.longitudinal_tol) {
    throw NonRadiativeError("analyze: non-radiative field content (longitudinal fraction " + std::to_string(lon) +
                            ")");
  }
  const double s = std::sqrt(2.0 * grid.units().eps0);
  CArray gl(grid.size());
  CArray gr(grid.size());
  kernels::for_each(grid.size(), [&](std::size_t i) {
    Complex pl{};
    Complex pr{};
    for (int a = 0; a < 3; ++a) {
      pl += std::conj(basis->e[a][i]) * ek.E[a][i];
      pr += basis->e[a][i] * ek.E[a][i];
    }
    gl[i] = s * pl;
    gr[i] = s * pr;
  });
  return PhotonWaveFunction(std::move(basis), std::move(gl), std::move(gr), ek.time);
}

PhotonWaveFunction analyze(const RealVectorField& E, const RealVectorField& B, BasisPtr basis,
                           const AnalyzeOptions& opts) {
  return analyze(spectral_e_field(E, B), std::move(basis), opts);
}

double maxwell_residual(const RSField& at_t, const RSField& at_t_dt) {
  require_same_grid(*at_t.grid, *at_t_dt.grid, "maxwell_residual");
  const GridPair& grid = *at_t.grid;
  const double dt = at_t_dt.time - at_t.time;
  if (dt == 0.0) throw std::invalid_argument("maxwell_residual: fields at equal times");
  const double ref = field_norm2(at_t.F);
  if (ref == 0.0 && field_norm2(at_t_dt.F) == 0.0) return 0.0;
  CVecField mid;
  for (int a = 0; a < 3; ++a) {
    mid[a].resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) mid[a][i] = 0.5 * (at_t.F[a][i] + at_t_dt.F[a][i]);
  }
  const CVecField curl = spectral_curl_r(grid, mid);
  const double c = grid.units().c;
  CVecField res;
  for (int a = 0; a < 3; ++a) {
    res[a].resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      res[a][i] = (at_t_dt.F[a][i] - at_t.F[a][i]) / dt + kI * c * curl[a][i];
    }
  }
  return std::sqrt(field_norm2(res) / (ref > 0.0 ? ref : field_norm2(at_t_dt.F)));
}

double relative_divergence(const GridPair& grid, const CVecField& v) {
  const CVecField vk = forward_transform(grid, v);
  double div2 = 0.0;
  double grad2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (on_nyquist_plane(grid, i)) continue;
    const Vec3 k = grid.k(i);
    const Complex d = k[0] * vk[0][i] + k[1] * vk[1][i] + k[2] * vk[2][i];
    div2 += std::norm(d);
    grad2 += dot(k, k) * (std::norm(vk[0][i]) + std::norm(vk[1][i]) + std::norm(vk[2][i]));
  }
  return grad2 > 0.0 ? std::sqrt(div2 / grad2) : 0.0;
}

RealVectorField vector_potential(const RealVectorField& B) {
  require_role(B, FieldRole::B, "vector_potential");
  const GridPair& grid = *B.grid;
  const CVecField bk = forward_transform(grid, to_complex(B.v));
  const double total = field_norm2(bk);
  const std::size_t z = grid.zero_index();
  const double dc = std::norm(bk[0][z]) + std::norm(bk[1][z]) + std::norm(bk[2][z]);
  if (total > 0.0 && dc > 1e-20 * total) throw std::invalid_argument("vector_potential: zero-mode in B");
  if (relative_divergence(grid, to_complex(B.v)) > 1e-6) {
    throw std::invalid_argument("vector_potential: B is not divergence-free");
  }
  CVecField ak = ik_cross(grid, bk);
  kernels::for_each(grid.size(), [&](std::size_t i) {
    const double k2 = grid.kmag()[i] * grid.kmag()[i];
    for (int a = 0; a < 3; ++a) ak[a][i] = grid.excluded(i) ? Complex{} : ak[a][i] / k2;
  });
  return RealVectorField{B.grid, real_part(inverse_transform(grid, ak)), FieldRole::A, B.time};
}

GreensCheck greens_function_check(const GridPair& grid) {
  const auto& d = grid.dims();
  const Vec3 box = grid.box_length();
  if (d[0] != d[1] || d[1] != d[2] || box[0] != box[1] || box[1] != box[2]) {
    throw std::invalid_argument("greens check: cubic grid required");
  }
  CArray inv_k2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double km = grid.kmag()[i];
    inv_k2[i] = grid.excluded(i) ? 0.0 : 1.0 / (km * km);
  }
  // sum dVk/(2pi)^3 e^{ikr}/k^2 = (2pi)^{-3/2} * inverse_transform
  const CArray g = inverse_transform(grid, inv_k2);
  const double norm_factor = 1.0 / std::pow(2.0 * kPi, 1.5);
  const double L = box[0];
  const double lattice_offset = -2.837297 / (4.0 * kPi * L);
  GreensCheck out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 r = grid.r(i);
    const double rm = norm(r);
    if (rm < L / 8.0 || rm > L / 4.0) continue;
    GreensSample s;
    s.r = r;
    s.numeric = norm_factor * g[i].real() - lattice_offset - rm * rm / (6.0 * L * L * L);
    s.exact = 1.0 / (4.0 * kPi * rm);
    out.max_mismatch = std::max(out.max_mismatch, s.mismatch());
    out.samples.push_back(s);
  }
  return out;
}

}  // namespace poincare
