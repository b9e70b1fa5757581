#include "poincare/algebra_checks.hpp"

#include <algorithm>
#include <limits>

#include "poincare/beams.hpp"
#include "poincare/kernels.hpp"

namespace poincare {

namespace {

int levi(int i, int j, int l) {
  if (i == j || j == l || i == l) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

const char* axis_name(int a) { return a == 0 ? "x" : a == 1 ? "y" : "z"; }

double invariant_norm(const PhotonWaveFunction& wf) { return std::sqrt(photon_number(wf)); }

// Pointwise multiplication of each helicity component by f(chi, i).
template <class F>
PhotonWaveFunction multiply(const PhotonWaveFunction& wf, const F& f) {
  const std::size_t n = wf.grid().size();
  CArray l(n);
  CArray r(n);
  kernels::for_each(n, [&](std::size_t i) {
    l[i] = f(+1, i) * wf.left0()[i];
    r[i] = f(-1, i) * wf.right0()[i];
  });
  return PhotonWaveFunction(wf.basis_ptr(), std::move(l), std::move(r), wf.time());
}

CArray orbital_component(const PhotonWaveFunction& wf, int chi, int axis, const CovariantOptions& opts) {
  const GridPair& grid = wf.grid();
  const std::size_t n = grid.size();
  const auto& omega = grid.omega();
  const CArray& g = wf.component0(chi);
  CArray G(n);
  kernels::for_each(n, [&](std::size_t i) { G[i] = grid.excluded(i) ? Complex{} : g[i] / std::sqrt(omega[i]); });
  const int b = (axis + 1) % 3;
  const int c = (axis + 2) % 3;
  const CArray db = covariant_component(wf.basis(), chi, G, wf.time(), b, opts);
  const CArray dc = covariant_component(wf.basis(), chi, G, wf.time(), c, opts);
  CArray out(n);
  kernels::for_each(n, [&](std::size_t i) {
    if (grid.excluded(i)) return;
    const Vec3 k = grid.k(i);
    // -i (k x D G)_axis
    out[i] = std::sqrt(omega[i]) * (-kI) * (k[b] * dc[i] - k[c] * db[i]);
  });
  return out;
}

PhotonWaveFunction apply_impl(const OperatorTag& tag, const PhotonWaveFunction& wf, const CovariantOptions& opts) {
  const GridPair& grid = wf.grid();
  const double hbar = grid.units().hbar;
  const auto& omega = grid.omega();
  const int a = tag.axis;
  switch (tag.kind) {
    case Generator::H:
      return multiply(wf, [&](int, std::size_t i) { return Complex(hbar * omega[i]); });
    case Generator::P:
      return multiply(wf, [&](int, std::size_t i) { return Complex(hbar * grid.k(i)[a]); });
    case Generator::J: {
      CArray l = orbital_component(wf, +1, a, opts);
      CArray r = orbital_component(wf, -1, a, opts);
      const auto& nk = grid.unit_k()[a];
      kernels::for_each(l.size(), [&](std::size_t i) {
        if (grid.excluded(i)) return;
        l[i] = hbar * (l[i] + nk[i] * wf.left0()[i]);
        r[i] = hbar * (r[i] - nk[i] * wf.right0()[i]);
      });
      return PhotonWaveFunction(wf.basis_ptr(), std::move(l), std::move(r), wf.time());
    }
    case Generator::K:
    case Generator::D: {
      CArray l = covariant_component(wf.basis(), +1, wf.left0(), wf.time(), a, opts);
      CArray r = covariant_component(wf.basis(), -1, wf.right0(), wf.time(), a, opts);
      if (tag.kind == Generator::K) {
        kernels::for_each(l.size(), [&](std::size_t i) {
          const Complex s = kI * hbar * omega[i];
          l[i] *= s;
          r[i] *= s;
        });
      }
      return PhotonWaveFunction(wf.basis_ptr(), std::move(l), std::move(r), wf.time());
    }
  }
  throw std::invalid_argument("apply_generator: unknown generator");
}

bool has_derivative(const OperatorTag& t) {
  return t.kind == Generator::J || t.kind == Generator::K || t.kind == Generator::D;
}

PhotonWaveFunction scaled(Complex s, const PhotonWaveFunction& wf) { return s * wf; }

}  // namespace

std::string OperatorTag::name() const {
  switch (kind) {
    case Generator::H:
      return "H";
    case Generator::P:
      return std::string("P") + axis_name(axis);
    case Generator::J:
      return std::string("J") + axis_name(axis);
    case Generator::K:
      return std::string("K") + axis_name(axis);
    case Generator::D:
      return std::string("D") + axis_name(axis);
  }
  return "?";
}

OperatorTag OperatorTag::parse(const std::string& s) {
  if (s == "H") return {Generator::H, 0};
  if (s.size() != 2) throw std::invalid_argument("operator tag: cannot parse '" + s + "'");
  OperatorTag t;
  switch (s[0]) {
    case 'P':
      t.kind = Generator::P;
      break;
    case 'J':
      t.kind = Generator::J;
      break;
    case 'K':
      t.kind = Generator::K;
      break;
    case 'D':
      t.kind = Generator::D;
      break;
    default:
      throw std::invalid_argument("operator tag: unknown generator in '" + s + "'");
  }
  if (s[1] < 'x' || s[1] > 'z') throw std::invalid_argument("operator tag: axis must be x, y or z in '" + s + "'");
  t.axis = s[1] - 'x';
  return t;
}

PhotonWaveFunction apply_generator(const OperatorTag& tag, const PhotonWaveFunction& wf, const CovariantOptions& opts) {
  if (tag.axis < 0 || tag.axis > 2) throw std::invalid_argument("apply_generator: axis out of range");
  if (has_derivative(tag)) enforce_boundary_decay(wf, opts.gradient, "apply_generator");
  return apply_impl(tag, wf, opts);
}

PhotonWaveFunction expected_commutator(const OperatorTag& a, const OperatorTag& b, const PhotonWaveFunction& wf,
                                       const CovariantOptions& opts, std::string* description) {
  const Units& u = wf.grid().units();
  const Complex ih = kI * u.hbar;
  const double c2 = u.c * u.c;
  auto describe = [&](const std::string& s) {
    if (description) *description = s;
  };
  auto zero = [&] {
    describe("0");
    return PhotonWaveFunction::zero(wf.basis_ptr(), wf.time());
  };
  const Generator A = a.kind;
  const Generator B = b.kind;
  auto rotated = [&](Generator g, Complex pre, const std::string& sym) {
    // pre * eps_{a b l} G_l
    for (int l = 0; l < 3; ++l) {
      const int e = levi(a.axis, b.axis, l);
      if (e == 0) continue;
      const OperatorTag t{g, l};
      std::string pre_s = sym;
      describe((e > 0 ? "" : "-") + pre_s + " " + t.name());
      return scaled(pre * double(e), apply_impl(t, wf, opts));
    }
    return zero();
  };
  auto swap_sign = [&]() {
    std::string d;
    PhotonWaveFunction r = expected_commutator(b, a, wf, opts, &d);
    describe("-(" + d + ")");
    return scaled(-1.0, r);
  };
  if (A == Generator::D || B == Generator::D) {
    if (A != Generator::D || B != Generator::D) throw std::invalid_argument("commutator: D pairs only with D");
    const int l = 3 - a.axis - b.axis;
    const int e = a.axis == b.axis ? 0 : levi(a.axis, b.axis, l);
    if (e == 0) return zero();
    describe(std::string(e > 0 ? "" : "-") + "i chi n_" + axis_name(l) + "/k^2");
    const GridPair& grid = wf.grid();
    const auto& nk = grid.unit_k()[l];
    return multiply(wf, [&](int chi, std::size_t i) {
      if (grid.excluded(i)) return Complex{};
      const double km = grid.kmag()[i];
      return kI * double(chi * e) * nk[i] / (km * km);
    });
  }
  // multiplication operators commute
  if ((A == Generator::H || A == Generator::P) && (B == Generator::H || B == Generator::P)) return zero();
  if (A == Generator::J) {
    switch (B) {
      case Generator::H:
        return zero();
      case Generator::P:
        return rotated(Generator::P, ih, "i hbar");
      case Generator::J:
        return rotated(Generator::J, ih, "i hbar");
      case Generator::K:
        return rotated(Generator::K, ih, "i hbar");
      default:
        break;
    }
  }
  if (B == Generator::J) return swap_sign();
  if (A == Generator::K && B == Generator::P) {
    if (a.axis != b.axis) return zero();
    describe("i hbar H");
    return scaled(ih, apply_impl({Generator::H, 0}, wf, opts));
  }
  if (A == Generator::P && B == Generator::K) return swap_sign();
  if (A == Generator::H && B == Generator::K) {
    describe(std::string("-i hbar c^2 P") + axis_name(b.axis));
    return scaled(-ih * c2, apply_impl({Generator::P, b.axis}, wf, opts));
  }
  if (A == Generator::K && B == Generator::H) return swap_sign();
  if (A == Generator::K && B == Generator::K) return rotated(Generator::J, -ih * c2, "-i hbar c^2");
  throw std::invalid_argument("commutator: pair " + a.name() + "," + b.name() + " not in the table");
}

CommutatorReport check_commutator(const OperatorTag& a, const OperatorTag& b, const PhotonWaveFunction& wf,
                                  const CovariantOptions& opts) {
  if (has_derivative(a) || has_derivative(b)) enforce_boundary_decay(wf, opts.gradient, "check_commutator");
  CommutatorReport rep;
  rep.a = a;
  rep.b = b;
  rep.dk = std::max({wf.grid().dk()[0], wf.grid().dk()[1], wf.grid().dk()[2]});
  rep.exact = !has_derivative(a) && !has_derivative(b);
  const PhotonWaveFunction ab = apply_impl(a, apply_impl(b, wf, opts), opts);
  const PhotonWaveFunction ba = apply_impl(b, apply_impl(a, wf, opts), opts);
  const PhotonWaveFunction expect = expected_commutator(a, b, wf, opts, &rep.expected);
  const double psi = invariant_norm(wf);
  if (psi == 0.0) return rep;
  const double res = invariant_norm(ab - ba - expect);
  rep.residual = res / psi;
  const double scale = invariant_norm(ab) + invariant_norm(ba);
  rep.relative = scale > 0.0 ? res / scale : 0.0;
  return rep;
}

CommutatorReport check_curvature(const PhotonWaveFunction& wf, int i, int j, const CovariantOptions& opts) {
  return check_commutator({Generator::D, i}, {Generator::D, j}, wf, opts);
}

std::vector<std::pair<OperatorTag, OperatorTag>> relation_table() {
  auto t = [](const char* s) { return OperatorTag::parse(s); };
  return {
      {t("Px"), t("Py")}, {t("Py"), t("Pz")}, {t("H"), t("Px")},  {t("H"), t("Pz")},  {t("Jx"), t("Jy")},
      {t("Jy"), t("Jz")}, {t("Jz"), t("Jx")}, {t("Jx"), t("Py")}, {t("Jz"), t("Px")}, {t("Jx"), t("Ky")},
      {t("Jy"), t("Kz")}, {t("Jx"), t("H")},  {t("Jz"), t("H")},  {t("Kx"), t("Px")}, {t("Ky"), t("Pz")},
      {t("H"), t("Kx")},  {t("H"), t("Kz")},  {t("Kx"), t("Ky")}, {t("Ky"), t("Kz")}, {t("Dx"), t("Dy")},
      {t("Dy"), t("Dz")}, {t("Dz"), t("Dx")},
  };
}

std::vector<CommutatorReport> run_relations(const PhotonWaveFunction& wf, const CovariantOptions& opts) {
  std::vector<CommutatorReport> out;
  for (const auto& [a, b] : relation_table()) out.push_back(check_commutator(a, b, wf, opts));
  return out;
}

PhotonWaveFunction algebra_test_state(GridPtr grid) {
  const double box = kPi / grid->spacing()[0];
  BasisPtr basis = build_basis(grid, {1.0, 0.0, 0.0});
  GaussianVortexSpec spec;
  spec.k0 = {0.3125 * box, 0.3125 * box, 0.3125 * box};
  spec.sigma_par = 0.125 * box;
  spec.sigma_perp = 0.125 * box;
  spec.m = 1;
  spec.a_left = 1.0;
  spec.a_right = Complex(0.3, 0.5);
  spec.edge_tol = algebra_options().gradient.boundary_tol;
  return gaussian_vortex(std::move(basis), spec);
}

CovariantOptions algebra_options() {
  CovariantOptions o;
  o.gradient.boundary_tol = 1e-3;
  return o;
}

std::vector<ConvergenceRow> convergence_study(const std::vector<int>& sizes, double spacing, const Units& units,
                                              const CovariantOptions& opts) {
  std::vector<std::vector<CommutatorReport>> runs;
  for (int n : sizes) runs.push_back(run_relations(algebra_test_state(make_grid(n, spacing, units)), opts));
  std::vector<ConvergenceRow> rows;
  const auto table = relation_table();
  for (std::size_t r = 0; r < table.size(); ++r) {
    ConvergenceRow row;
    row.relation = "[" + table[r].first.name() + "," + table[r].second.name() + "]";
    for (const auto& run : runs) {
      row.dk.push_back(run[r].dk);
      row.residual.push_back(run[r].residual);
      row.exact = run[r].exact;
    }
    for (std::size_t g = 0; g + 1 < runs.size(); ++g) {
      const double fine = row.residual[g + 1];
      row.ratio.push_back(fine > 0.0 ? row.residual[g] / fine : std::numeric_limits<double>::infinity());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace poincare
