#include <doctest.h>

#include "helpers.hpp"

using namespace poincare;
using namespace testing_support;

namespace {

PhotonWaveFunction other_packet() {
  GaussianVortexSpec s;
  s.k0 = {0.72, 0.99, 0.81};
  s.r0 = {-0.5, 0.25, 1.0};
  s.sigma_par = 0.4;
  s.sigma_perp = 0.4;
  s.m = -1;
  s.a_left = Complex(0.2, -0.7);
  s.a_right = 1.0;
  s.edge_tol = 1e-3;
  return gaussian_vortex(small_packet().basis_ptr(), s);
}

std::vector<std::pair<std::string, RArray>> phases(const GridPair& g) {
  RArray cst(g.size(), 1.3), lin(g.size()), bump(g.size());
  const Vec3 c{0.9, 0.7, 1.2};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 k = g.k(i);
    lin[i] = dot(Vec3{0.7, -1.1, 0.4}, k);
    const Vec3 d = k - c;
    bump[i] = 2.0 * std::exp(-dot(d, d) / (2 * 0.5 * 0.5));
  }
  return {{"constant", cst}, {"linear", lin}, {"bump", bump}};
}

}  // namespace

TEST_CASE("scalar product: positivity, conjugate symmetry, single bin") {
  const auto a = small_packet();
  const auto b = other_packet();
  const Complex aa = scalar_product(a, a);
  CHECK(aa.real() > 0.0);
  CHECK(aa.imag() == 0.0);
  const Complex ab = scalar_product(a, b), ba = scalar_product(b, a);
  CHECK(std::abs(ab - std::conj(ba)) <= 1e-15 * std::abs(ab));

  auto g = make_grid(8, 1.0, Units{1.0, 2.0, 1.0});
  auto basis = build_basis(g, {1, 0, 0});
  const std::array<int, 3> at{5, 3, 6};
  const auto one = single_bin(basis, at, Complex(1.5, -2.0));
  const double w = g->omega()[g->index(5, 3, 6)];
  CHECK(photon_number(one) == doctest::Approx(6.25 * g->dVk() / (2.0 * w)).epsilon(1e-14));
}

TEST_CASE("scalar product across times and grids") {
  const auto a = small_packet(32);
  const auto b = other_packet();
  const Complex ab = scalar_product(a, b);
  CHECK(std::abs(scalar_product(evolve(a, 3.0), evolve(b, 3.0)) - ab) <= 1e-13 * std::abs(ab));
  // <a|e^{-iHt} a> = sum w |g|^2 e^{-i w t}
  Complex direct = 0.0;
  const auto& ag = a.grid();
  for (std::size_t i = 0; i < ag.size(); ++i) {
    direct += ag.invariant_weight()[i] * (std::norm(a.left0()[i]) + std::norm(a.right0()[i])) *
              std::polar(1.0, -ag.omega()[i] * 1.0);
  }
  CHECK(std::abs(scalar_product(a, evolve(a, 1.0)) - direct) <= 1e-13 * photon_number(a));
  auto g = make_grid(16, 1.0);
  const auto c = PhotonWaveFunction::zero(build_basis(g, {1, 0, 0}));
  CHECK_THROWS_AS(scalar_product(a, c), GridMismatchError);
}

TEST_CASE("photon number: zero state, scaling, normalized Bessel beam") {
  const auto a = small_packet();
  CHECK(photon_number(PhotonWaveFunction::zero(a.basis_ptr())) == 0.0);
  const Complex lam(0.6, -1.7);
  CHECK(photon_number(lam * a) == doctest::Approx(std::norm(lam) * photon_number(a)).epsilon(1e-14));
  auto g = make_grid(64, 2 * kPi / 64);
  BesselSpec s{9.6, 12.8, 3, 1, 3.0, 2.25, 1.0};
  CHECK(std::abs(photon_number(bessel_beam(build_basis(g, {1, 0, 0}), s)) - 1.0) <= 1e-10);
}

TEST_CASE("the k = 0 amplitude is forced to zero") {
  auto g = make_grid(8, 1.0);
  CArray l(g->size(), 1.0), r(g->size(), 2.0);
  PhotonWaveFunction wf(build_basis(g, {1, 0, 0}), l, r);
  CHECK(wf.left0()[g->zero_index()] == 0.0);
  CHECK(wf.right0()[g->zero_index()] == 0.0);
}

TEST_CASE("helicity operator") {
  const auto a = small_packet();
  const auto h = apply_helicity(a);
  CHECK(max_abs_diff(h.left0(), a.left0()) == 0.0);
  CArray neg = a.right0();
  for (auto& v : neg) v = -v;
  CHECK(max_abs_diff(h.right0(), neg) == 0.0);
  const auto hh = apply_helicity(h);
  CHECK(max_abs_diff(hh.right0(), a.right0()) == 0.0);
}

TEST_CASE("free evolution") {
  const auto a = small_packet();
  const auto e0 = evolve(a, 0.0);
  CHECK(max_abs_diff(e0.left(), a.left()) == 0.0);
  const auto e = evolve(a, 37.5);
  CHECK(photon_number(e) == doctest::Approx(photon_number(a)).epsilon(1e-15));
  const auto e12 = evolve(evolve(a, 10.0), 27.5);
  CHECK(max_abs_diff(e12.left(), e.left()) <= 1e-12 * max_abs(a.left0()));
  const std::size_t i = a.grid().index(22, 21, 22);
  CHECK(std::abs(e.left()[i] - std::polar(1.0, -a.grid().omega()[i] * 37.5) * a.left0()[i]) <= 1e-13);
}

TEST_CASE("generators are hermitian on smooth states") {
  const auto f = small_packet();
  const auto g = other_packet();
  for (const char* name : {"H", "Px", "Pz", "Jx", "Jy", "Jz", "Kx", "Ky", "Kz"}) {
    CAPTURE(name);
    const auto tag = OperatorTag::parse(name);
    const Complex lhs = scalar_product(f, apply_generator(tag, g, loose()));
    const Complex rhs = scalar_product(apply_generator(tag, f, loose()), g);
    CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(std::abs(lhs), 1e-300));
  }
}

TEST_CASE("covariant derivative is gauge covariant") {
  const auto wf = small_packet();
  const auto d = covariant_derivative(wf, loose());
  for (const auto& [name, phi] : phases(wf.grid())) {
    CAPTURE(name);
    auto b2 = gauge_transform(wf.basis(), phi);
    const auto wf2 = transform_amplitudes(wf, b2, phi);
    const auto d2 = covariant_derivative(wf2, loose());
    double err = 0.0, ref = 0.0;
    for (int ax = 0; ax < 3; ++ax) {
      for (std::size_t i = 0; i < wf.grid().size(); ++i) {
        err = std::max(err, std::abs(d2[ax].left0()[i] - std::polar(1.0, phi[i]) * d[ax].left0()[i]));
        err = std::max(err, std::abs(d2[ax].right0()[i] - std::polar(1.0, -phi[i]) * d[ax].right0()[i]));
        ref = std::max(ref, std::abs(d[ax].left0()[i]));
      }
    }
    CHECK(err <= 1e-10 * ref);
  }
}

TEST_CASE("scalar products are gauge invariant") {
  const auto f = small_packet();
  const auto g = other_packet();
  for (const auto& [name, phi] : phases(f.grid())) {
    CAPTURE(name);
    auto b2 = gauge_transform(f.basis(), phi);
    const Complex before = scalar_product(f, g);
    const Complex after = scalar_product(transform_amplitudes(f, b2, phi), transform_amplitudes(g, b2, phi));
    CHECK(std::abs(after - before) <= 1e-12 * std::abs(before));
  }
}

TEST_CASE("curvature commutator flips sign with helicity") {
  const auto mixed = small_packet();
  const auto pure_l = PhotonWaveFunction(mixed.basis_ptr(), mixed.left0(), CArray(mixed.grid().size()));
  const auto pure_r = PhotonWaveFunction(mixed.basis_ptr(), CArray(mixed.grid().size()), mixed.left0());
  auto curvature = [](const PhotonWaveFunction& s) {
    const auto dx = OperatorTag::parse("Dx"), dy = OperatorTag::parse("Dy");
    const auto c = apply_generator(dx, apply_generator(dy, s, loose()), loose()) -
                   apply_generator(dy, apply_generator(dx, s, loose()), loose());
    return scalar_product(s, c);
  };
  const Complex l = curvature(pure_l), r = curvature(pure_r);
  // i chi <n_z/|k|^2>, with n_z > 0 on the packet
  CHECK(l.imag() > 0.0);
  CHECK(r.imag() < 0.0);
  CHECK(std::abs(l.imag() + r.imag()) <= 0.05 * std::abs(l.imag()));
}

TEST_CASE("derivative generators refuse states touching the k-box edge") {
  auto g = make_grid(8, 1.0);
  CArray full(g->size(), 1.0);
  PhotonWaveFunction wf(build_basis(g, {1, 0, 0}), full, full);
  CHECK_THROWS_AS(covariant_derivative(wf), BoundaryDecayError);
  CHECK_THROWS_AS(apply_generator(OperatorTag::parse("Jz"), wf), BoundaryDecayError);
  CHECK_NOTHROW(apply_generator(OperatorTag::parse("Pz"), wf));
}
