#include "poincare/polarization.hpp"

#include <algorithm>

#include "poincare/kernels.hpp"
#include "poincare/kgradient.hpp"

namespace poincare {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_unit(const Vec3& axis) {
  if (std::abs(norm(axis) - 1.0) > 1e-12) throw std::invalid_argument("chart axis must be a unit vector");
}

// alpha from finite differences of e: alpha_j = -Im(e^* . d_j e).
RVecField connection_from_basis(const GridPair& grid, const CVecField& e) {
  RVecField alpha;
  for (int j = 0; j < 3; ++j) {
    CVecField de{difference_k(grid, e[0], j), difference_k(grid, e[1], j), difference_k(grid, e[2], j)};
    alpha[j].resize(grid.size());
    kernels::for_each(grid.size(), [&](std::size_t i) {
      if (grid.excluded(i)) {
        alpha[j][i] = 0.0;
        return;
      }
      Complex s{};
      for (int m = 0; m < 3; ++m) s += std::conj(e[m][i]) * de[m][i];
      alpha[j][i] = -s.imag();
    });
  }
  return alpha;
}

}  // namespace

bool PolarizationBasis::is_pole(std::size_t idx) const {
  return std::binary_search(pole_points.begin(), pole_points.end(), idx);
}

std::pair<Vec3, Vec3> transverse_frame(const Vec3& axis) {
  // For axis = z this gives (u, v) = (x, y).
  const Vec3 seed = std::abs(axis[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  Vec3 u = seed - dot(seed, axis) * axis;
  u = (1.0 / norm(u)) * u;
  const Vec3 v = cross(axis, u);
  return {u, v};
}

CVec3 polarization_vector(const Vec3& k, const Vec3& chart_axis, double pole_eps) {
  const double km = norm(k);
  const Vec3 n = (1.0 / km) * k;
  const Vec3 axn = cross(chart_axis, n);
  const double s = norm(axn);
  Vec3 theta_hat;
  Vec3 phi_hat;
  if (s < pole_eps) {
    // azimuth-zero limit: theta_hat = +-u, phi_hat = v
    const auto [u, v] = transverse_frame(chart_axis);
    theta_hat = dot(n, chart_axis) > 0.0 ? u : -1.0 * u;
    phi_hat = v;
  } else {
    phi_hat = (1.0 / s) * axn;
    theta_hat = cross(phi_hat, n);
  }
  return {kInvSqrt2 * Complex(theta_hat[0], phi_hat[0]), kInvSqrt2 * Complex(theta_hat[1], phi_hat[1]),
          kInvSqrt2 * Complex(theta_hat[2], phi_hat[2])};
}

BasisPtr build_basis(GridPtr grid, Vec3 chart_axis, double pole_eps) {
  require_unit(chart_axis);
  auto basis = std::make_shared<PolarizationBasis>();
  basis->grid = grid;
  basis->chart_axis = chart_axis;
  basis->pole_eps = pole_eps;
  const std::size_t n = grid->size();
  for (auto& c : basis->e) c.resize(n);
  std::vector<char> pole(n, 0);
  kernels::for_each(n, [&](std::size_t i) {
    // The excluded point gets the +axis pole basis.
    const Vec3 k = grid->excluded(i) ? chart_axis : grid->k(i);
    const CVec3 e = polarization_vector(k, chart_axis, pole_eps);
    for (int m = 0; m < 3; ++m) basis->e[m][i] = e[m];
    if (!grid->excluded(i) && norm(cross(chart_axis, grid->unit_k(i))) < pole_eps) pole[i] = 1;
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (pole[i]) basis->pole_points.push_back(i);
  }
  basis->alpha = connection_from_basis(*grid, basis->e);
  return basis;
}

BasisPtr gauge_transform(const PolarizationBasis& basis, std::span<const double> phase) {
  const GridPair& grid = *basis.grid;
  if (phase.size() != grid.size()) throw GridMismatchError("gauge_transform: phase field does not match grid");
  auto out = std::make_shared<PolarizationBasis>(basis);
  kernels::for_each(grid.size(), [&](std::size_t i) {
    const Complex rot = std::polar(1.0, -phase[i]);
    for (int m = 0; m < 3; ++m) out->e[m][i] *= rot;
  });
  for (int j = 0; j < 3; ++j) {
    const RArray grad = difference_k(grid, phase, j);
    kernels::for_each(grid.size(), [&](std::size_t i) {
      if (!grid.excluded(i)) out->alpha[j][i] += grad[i];
    });
  }
  return out;
}

double IdentityResiduals::max() const {
  return std::max({transverse, null, unit, spin, antipodal, self_cross, projector});
}

IdentityResiduals check_identities(const PolarizationBasis& basis) {
  const GridPair& grid = *basis.grid;
  const auto& d = grid.dims();
  const double c = grid.units().c;
  std::vector<IdentityResiduals> per(grid.size());
  kernels::for_each(grid.size(), [&](std::size_t i) {
    if (grid.excluded(i) || basis.is_pole(i)) return;
    IdentityResiduals& r = per[i];
    const CVec3 e = basis.at(i);
    const CVec3 ec = conj(e);
    const Vec3 k = grid.k(i);
    const Vec3 n = grid.unit_k(i);
    const double w = grid.omega()[i];
    const CVec3 kc{k[0], k[1], k[2]};
    const CVec3 kxe = cross(kc, e);
    double t = 0.0;
    for (int m = 0; m < 3; ++m) t = std::max(t, std::abs(c * kxe[m] + kI * w * e[m]) / w);
    r.transverse = t;
    r.null = std::abs(dot(e, e));
    r.unit = std::abs(dot(ec, e) - 1.0);
    const CVec3 s = cross(ec, e);
    const CVec3 ee = cross(e, e);
    for (int m = 0; m < 3; ++m) {
      r.spin = std::max(r.spin, std::abs(s[m] - kI * n[m]));
      r.self_cross = std::max(r.self_cross, std::abs(ee[m]));
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        Complex expect = (a == b ? 0.5 : 0.0) - 0.5 * n[a] * n[b];
        const int l = 3 - a - b;
        if (a != b) {
          const double eps = ((b - a + 3) % 3 == 1) ? 1.0 : -1.0;
          expect += 0.5 * kI * eps * n[l];
        }
        r.projector = std::max(r.projector, std::abs(ec[a] * e[b] - expect));
      }
    }
    const auto cc = grid.coords(i);
    if (cc[0] > 0 && cc[1] > 0 && cc[2] > 0) {
      const std::size_t j = grid.index(d[0] - cc[0], d[1] - cc[1], d[2] - cc[2]);
      if (!basis.is_pole(j)) r.antipodal = std::abs(dot(ec, basis.at(j)));
    }
  });
  IdentityResiduals out;
  for (const auto& r : per) {
    out.transverse = std::max(out.transverse, r.transverse);
    out.null = std::max(out.null, r.null);
    out.unit = std::max(out.unit, r.unit);
    out.spin = std::max(out.spin, r.spin);
    out.antipodal = std::max(out.antipodal, r.antipodal);
    out.self_cross = std::max(out.self_cross, r.self_cross);
    out.projector = std::max(out.projector, r.projector);
  }
  return out;
}

double berry_loop_integral(const PolarizationBasis& basis, const LoopSpec& loop) {
  const GridPair& grid = *basis.grid;
  const int a = (loop.normal_axis + 1) % 3;
  const int b = (loop.normal_axis + 2) % 3;
  auto at = [&](int ia, int ib) {
    std::array<int, 3> c{};
    c[loop.normal_axis] = loop.plane_index;
    c[a] = ia;
    c[b] = ib;
    return grid.index(c[0], c[1], c[2]);
  };
  auto segment = [&](int axis, int fixed, int from, int to, bool along_a) {
    // trapezoid along grid line; direction from -> to
    const double h = grid.dk()[axis] * (to > from ? 1.0 : -1.0);
    double sum = 0.0;
    const int step = to > from ? 1 : -1;
    for (int p = from; p != to; p += step) {
      const std::size_t i0 = along_a ? at(p, fixed) : at(fixed, p);
      const std::size_t i1 = along_a ? at(p + step, fixed) : at(fixed, p + step);
      sum += 0.5 * (basis.alpha[axis][i0] + basis.alpha[axis][i1]) * h;
    }
    return sum;
  };
  double total = 0.0;
  total += segment(a, loop.lo[1], loop.lo[0], loop.hi[0], true);
  total += segment(b, loop.hi[0], loop.lo[1], loop.hi[1], false);
  total += segment(a, loop.hi[1], loop.hi[0], loop.lo[0], true);
  total += segment(b, loop.lo[0], loop.hi[1], loop.lo[1], false);
  return total;
}

double loop_solid_angle(const GridPair& grid, const LoopSpec& loop) {
  const int a = (loop.normal_axis + 1) % 3;
  const int b = (loop.normal_axis + 2) % 3;
  const double h = grid.k_axis(loop.normal_axis, loop.plane_index);
  const double x0 = grid.k_axis(a, loop.lo[0]);
  const double x1 = grid.k_axis(a, loop.hi[0]);
  const double y0 = grid.k_axis(b, loop.lo[1]);
  const double y1 = grid.k_axis(b, loop.hi[1]);
  // Solid angle of the quadrant-corner rectangle [0,x]x[0,y] at height h.
  auto corner = [h](double x, double y) { return std::atan(x * y / (h * std::sqrt(x * x + y * y + h * h))); };
  return corner(x1, y1) - corner(x0, y1) - corner(x1, y0) + corner(x0, y0);
}

CurvatureCheck curvature_check(const PolarizationBasis& basis, double min_k, double min_pole_angle) {
  const GridPair& grid = *basis.grid;
  const auto& d = grid.dims();
  RVecField curl;
  for (int l = 0; l < 3; ++l) {
    const int i = (l + 1) % 3;
    const int j = (l + 2) % 3;
    const RArray dia = difference_k(grid, basis.alpha[j], i);
    const RArray dja = difference_k(grid, basis.alpha[i], j);
    curl[l].resize(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) curl[l][p] = dia[p] - dja[p];
  }
  CurvatureCheck out;
  const double sin_min = std::sin(min_pole_angle);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto c = grid.coords(p);
    bool interior = true;
    for (int ax = 0; ax < 3; ++ax) interior = interior && c[ax] >= 2 && c[ax] < d[ax] - 2;
    const double km = grid.kmag()[p];
    if (!interior || km < min_k) continue;
    const Vec3 n = grid.unit_k(p);
    if (norm(cross(basis.chart_axis, n)) < sin_min) continue;
    const double ref = 1.0 / (km * km);
    double res = 0.0;
    for (int l = 0; l < 3; ++l) res = std::max(res, std::abs(curl[l][p] + n[l] * ref));
    out.max_residual = std::max(out.max_residual, res);
    out.max_reference = std::max(out.max_reference, ref);
    ++out.points;
  }
  return out;
}

}  // namespace poincare
