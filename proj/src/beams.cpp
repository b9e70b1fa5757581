#include "poincare/beams.hpp"

#include <algorithm>
#include <string>

#include "poincare/kernels.hpp"

namespace poincare {

namespace {

constexpr double kEdgeTol = 1e-8;

[[noreturn]] void invalid(const std::string& msg) { throw std::invalid_argument(msg); }

double max_dk(const GridPair& grid) { return std::max({grid.dk()[0], grid.dk()[1], grid.dk()[2]}); }

// Largest |k| reachable on an axis with the given margin in cells.
double axis_reach(const GridPair& grid, int axis, int margin) {
  return (grid.dims()[axis] / 2 - 1 - margin) * grid.dk()[axis];
}

PhotonWaveFunction finish(BasisPtr basis, CArray gl, CArray gr, double photons, double edge_tol, const char* what) {
  PhotonWaveFunction wf(std::move(basis), std::move(gl), std::move(gr));
  const double n = photon_number(wf);
  if (!(n > 0.0)) invalid(std::string(what) + ": state has no support on the grid");
  if (boundary_margin(wf) > edge_tol) invalid(std::string(what) + ": packet reaches the momentum-grid edge");
  wf *= Complex(std::sqrt(photons / n));
  return wf;
}

}  // namespace

PhotonWaveFunction bessel_beam(BasisPtr basis, const BesselSpec& spec) {
  const GridPair& grid = *basis->grid;
  if (!(spec.k_perp0 > 0.0)) invalid("bessel: k_perp0 must be positive");
  if (!(spec.sigma_perp > 0.0) || !(spec.sigma_z > 0.0)) invalid("bessel: widths must be positive");
  if (spec.helicity != 1 && spec.helicity != -1) invalid("bessel: helicity must be +1 or -1");
  if (!(spec.amplitude > 0.0)) invalid("bessel: amplitude must be positive");
  const double dk = max_dk(grid);
  if (spec.sigma_perp < 2.0 * dk || spec.sigma_z < 2.0 * dk) {
    invalid("bessel: widths below 2 dk are unresolvable (dk = " + std::to_string(dk) + ")");
  }
  if (spec.k_perp0 > std::min(axis_reach(grid, 0, 4), axis_reach(grid, 1, 4)) ||
      std::abs(spec.k_z0) > axis_reach(grid, 2, 4)) {
    invalid("bessel: ring unresolvable, closer than 4 dk to the grid edge");
  }
  // distance from the ring to the chart pole line
  const Vec3& a = basis->chart_axis;
  double dmin = 1e300;
  for (int s = 0; s < 720; ++s) {
    const double phi = 2.0 * kPi * s / 720.0;
    const Vec3 p{spec.k_perp0 * std::cos(phi), spec.k_perp0 * std::sin(phi), spec.k_z0};
    dmin = std::min(dmin, norm(cross(p, a)));
  }
  if (dmin < 3.0 * std::max(spec.sigma_perp, spec.sigma_z)) invalid("bessel: chart pole collides with the ring");

  const double h = spec.helicity;
  const std::size_t n = grid.size();
  const double s2 = std::sqrt(2.0 * grid.units().eps0);
  CArray gl(n);
  CArray gr(n);
  kernels::for_each(n, [&](std::size_t i) {
    if (grid.excluded(i)) return;
    const Vec3 k = grid.k(i);
    const double kp = std::hypot(k[0], k[1]);
    if (kp == 0.0) return;
    const double km = grid.kmag()[i];
    const double c = std::cos(std::atan2(k[1], k[0]));
    const double s = std::sin(std::atan2(k[1], k[0]));
    const double dp = (kp - spec.k_perp0) / spec.sigma_perp;
    const double dz = (k[2] - spec.k_z0) / spec.sigma_z;
    const double g = std::exp(-0.5 * (dp * dp + dz * dz));
    if (g == 0.0) return;
    const Complex ring = g * std::polar(1.0, spec.m * std::atan2(k[1], k[0]));
    const double ct = k[2] / km;
    const CVec3 E{ring * Complex(-ct * c, h * s), ring * Complex(-ct * s, -h * c), ring * (kp / km)};
    const CVec3 e = basis->at(i);
    gl[i] = s2 * dot(conj(e), E);
    gr[i] = s2 * dot(e, E);
  });
  return finish(std::move(basis), std::move(gl), std::move(gr), spec.amplitude * spec.amplitude, kEdgeTol, "bessel");
}

double bessel_ratio_analytic(int m, double kz_over_k, int helicity) { return m / kz_over_k - helicity; }

double bessel_signed_ratio_analytic(int m, double kz_over_k, int helicity) {
  return m / (helicity * kz_over_k) - 1.0;
}

PhotonWaveFunction gaussian_vortex(BasisPtr basis, const GaussianVortexSpec& spec) {
  const GridPair& grid = *basis->grid;
  const double k0m = norm(spec.k0);
  if (!(k0m > 0.0)) invalid("gaussian: centre k0 must be nonzero");
  if (!(spec.sigma_par > 0.0) || !(spec.sigma_perp > 0.0)) invalid("gaussian: widths must be positive");
  const double dk = max_dk(grid);
  if (spec.sigma_par < 2.0 * dk || spec.sigma_perp < 2.0 * dk) {
    invalid("gaussian: width too small, below 2 dk (dk = " + std::to_string(dk) + ")");
  }
  if (spec.a_left == 0.0 && spec.a_right == 0.0) invalid("gaussian: both helicity amplitudes are zero");
  if (!(spec.photons > 0.0)) invalid("gaussian: photon number must be positive");
  if (norm(cross(spec.k0, basis->chart_axis)) < 3.0 * std::max(spec.sigma_par, spec.sigma_perp)) {
    invalid("gaussian: centre too close to a chart pole");
  }
  const Vec3 w = (1.0 / k0m) * spec.k0;
  const auto [u, v] = transverse_frame(w);
  const double r2 = 1.0 / std::sqrt(2.0);
  const CVec3 eps_p{r2 * Complex(u[0], v[0]), r2 * Complex(u[1], v[1]), r2 * Complex(u[2], v[2])};
  const CVec3 eps_m = conj(eps_p);
  const bool shifted = norm(spec.r0) > 0.0;
  const std::size_t n = grid.size();
  CArray gl(n);
  CArray gr(n);
  kernels::for_each(n, [&](std::size_t i) {
    if (grid.excluded(i)) return;
    const Vec3 k = grid.k(i);
    const double qp = (dot(k, w) - k0m) / spec.sigma_par;
    const double ku = dot(k, u) / spec.sigma_perp;
    const double kv = dot(k, v) / spec.sigma_perp;
    Complex prof = std::exp(-0.5 * (qp * qp + ku * ku + kv * kv));
    const Complex z = spec.m >= 0 ? Complex(ku, kv) : Complex(ku, -kv);
    for (int p = 0; p < std::abs(spec.m); ++p) prof *= z;
    if (shifted) prof *= std::polar(1.0, -dot(k, spec.r0));
    const CVec3 e = basis->at(i);
    gl[i] = spec.a_left * prof * dot(conj(e), eps_p);
    gr[i] = spec.a_right * prof * dot(e, eps_m);
  });
  return finish(std::move(basis), std::move(gl), std::move(gr), spec.photons, spec.edge_tol, "gaussian");
}

double helicity_leakage(const PhotonWaveFunction& wf, int helicity) {
  const double total = photon_number(wf);
  if (total == 0.0) return 0.0;
  const auto& w = wf.grid().invariant_weight();
  const CArray& other = wf.component0(-helicity);
  const double wrong = kernels::tree_sum<double>(other.size(), [&](std::size_t i) { return w[i] * std::norm(other[i]); });
  return wrong / total;
}

}  // namespace poincare
