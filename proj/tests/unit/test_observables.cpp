#include <doctest.h>

#include "helpers.hpp"
#include "poincare/report.hpp"

using namespace poincare;
using namespace testing_support;

namespace {

double vdiff(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Pure-L state on 16^3 built bin by bin: a Gaussian around 2 dk z_hat with
// width 1.2 dk and a weaker R part. Small enough for the O(n^2) route.
PhotonWaveFunction nonlocal_state() {
  auto g = make_grid(16, 1.0);
  auto basis = build_basis(g, {1, 0, 0});
  const double dk = g->dk()[0];
  const double s = 1.2 * dk;
  const double r2 = 1.0 / std::sqrt(2.0);
  const CVec3 ep{r2, Complex(0.0, r2), 0.0};
  CArray gl(g->size()), gr(g->size());
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (g->excluded(i)) continue;
    const Vec3 k = g->k(i);
    const double q = (k[2] - 2 * dk) * (k[2] - 2 * dk) + k[0] * k[0] + k[1] * k[1];
    const double prof = std::exp(-q / (2 * s * s));
    const CVec3 e = basis->at(i);
    gl[i] = prof * dot(conj(e), ep);
    gr[i] = 0.3 * prof * dot(e, conj(ep));
  }
  return PhotonWaveFunction(basis, std::move(gl), std::move(gr));
}

}  // namespace

TEST_CASE("single occupied bin carries one quantum of energy, momentum and spin") {
  const Units u{2.0, 1.7, 0.8};
  auto g = make_grid(16, 0.5, u);
  auto basis = build_basis(g, {1, 0, 0});
  const std::array<int, 3> at{9, 11, 6};
  const std::size_t b = g->index(at[0], at[1], at[2]);
  const double amp = std::sqrt(u.hbar * g->omega()[b] / g->dVk());
  for (int chi : {1, -1}) {
    CAPTURE(chi);
    const auto wf = chi > 0 ? single_bin(basis, at, amp) : single_bin(basis, at, 0.0, amp);
    CHECK(photon_number(wf) == doctest::Approx(1.0).epsilon(1e-14));
    const auto gen = generators_photon_picture(wf).set;
    CHECK(gen.H == doctest::Approx(u.hbar * g->omega()[b]).epsilon(1e-14));
    CHECK(vdiff(gen.P, u.hbar * g->k(b)) <= 1e-14 * norm(g->k(b)));
    CHECK(vdiff(*gen.Js, (chi * u.hbar) * g->unit_k(b)) <= 1e-14);

    // the same plane wave in the field picture (periodic, so no moments)
    FieldPictureOptions fo;
    fo.skip_moments = true;
    const auto f = generators_field_picture(synthesize(wf), fo);
    CHECK(f.H == doctest::Approx(gen.H).epsilon(1e-12));
    CHECK(vdiff(f.P, gen.P) <= 1e-12 * norm(gen.P));
    CHECK(f.H == doctest::Approx(u.c * norm(f.P)).epsilon(1e-12));
  }
}

TEST_CASE("zero state and balanced helicities") {
  const auto zero = PhotonWaveFunction::zero(small_packet().basis_ptr());
  const auto z = generators_photon_picture(zero).set;
  CHECK(z.H == 0.0);
  CHECK(z.N == 0.0);
  for (int a = 0; a < 3; ++a) {
    CHECK(z.P[a] == 0.0);
    CHECK(z.J[a] == 0.0);
    CHECK(z.K[a] == 0.0);
    CHECK((*z.Js)[a] == 0.0);
    CHECK((*z.Jo)[a] == 0.0);
  }

  GaussianVortexSpec s;
  s.k0 = {0.3 * kPi, 0.25 * kPi, 0.35 * kPi};
  s.sigma_par = s.sigma_perp = 0.125 * kPi;
  s.a_left = 1.0;
  s.a_right = 1.0;
  s.edge_tol = 1e-3;
  const auto wf = gaussian_vortex(small_packet().basis_ptr(), s);
  const auto sp = split_angular_momentum(wf, loose());
  CHECK(norm(sp.Js) <= 1e-14);
}

TEST_CASE("split closes: Jo + Js = J and |Js| <= hbar N") {
  const auto wf = small_packet();
  const auto gen = generators_photon_picture(wf, loose()).set;
  CHECK(vdiff(*gen.Jo + *gen.Js, gen.J) <= 1e-14 * norm(gen.J));
  CHECK(norm(*gen.Js) <= wf.grid().units().hbar * gen.N);
  const auto sp = split_angular_momentum(wf, loose());
  CHECK(vdiff(sp.Jo, *gen.Jo) <= 1e-14 * norm(sp.Jo));
  CHECK(vdiff(sp.Js, *gen.Js) <= 1e-14 * norm(sp.Js));
  CHECK(sp.diag.orbital_parallel <= 1e-12);
  // D is anti-hermitian up to the one-sided edge stencils
  CHECK(sp.diag.imag_orbital <= sp.diag.boundary_margin * sp.diag.boundary_margin);
  CHECK(split_angular_momentum(field_packet()).diag.imag_orbital <= 1e-12);
}

TEST_CASE("photon and field pictures agree on H and P") {
  const auto wf = field_packet();
  const auto ph = generators_photon_picture(wf).set;
  const auto fd = generators_field_picture(synthesize(wf));
  CHECK(relative_difference(ph.H, fd.H) <= 1e-6);
  CHECK(relative_difference(ph.P, fd.P) <= 1e-6);
}

TEST_CASE("photon and field pictures converge on J and K") {
  double dj[2], dK[2];
  int i = 0;
  for (int n : {64, 128}) {
    const auto wf = field_packet(n);
    const auto ph = generators_photon_picture(wf).set;
    const auto fd = generators_field_picture(synthesize(wf));
    dj[i] = relative_difference(ph.J, fd.J);
    dK[i] = relative_difference(ph.K, fd.K);
    ++i;
  }
  MESSAGE("J: " << dj[0] << " -> " << dj[1] << ", K: " << dK[0] << " -> " << dK[1]);
  CHECK(dj[0] / dj[1] >= 2.0);
  CHECK(dK[0] / dK[1] >= 2.0);
  CHECK(dj[1] <= 0.02);
  CHECK(dK[1] <= 0.02);
}

TEST_CASE("field picture refuses packets that reach the box edge") {
  const auto wf = evolve(field_packet(), 30.0);
  CHECK_THROWS_AS(generators_field_picture(synthesize(wf)), BoundaryDecayError);
}

TEST_CASE("Jo and Js are conserved, K moves with the energy centroid") {
  const auto wf = small_packet();
  const auto g0 = generators_photon_picture(wf, loose()).set;
  const double period = 2 * kPi / g0.H * g0.N;  // hbar = 1: mean frequency
  const double c2 = wf.grid().units().c * wf.grid().units().c;
  for (double t : {10 * period, -10 * period}) {
    CAPTURE(t);
    const auto gt = generators_photon_picture(evolve(wf, t), loose()).set;
    CHECK(vdiff(*gt.Jo, *g0.Jo) <= 1e-10 * norm(*g0.Jo));
    CHECK(vdiff(*gt.Js, *g0.Js) <= 1e-10 * norm(*g0.Js));
    CHECK(gt.H == doctest::Approx(g0.H).epsilon(1e-14));
    CHECK(vdiff(gt.K, g0.K + (t * c2) * g0.P) <= 1e-10 * norm(t * c2 * g0.P));
  }
}

TEST_CASE("split is gauge invariant") {
  const auto wf = small_packet();
  const auto ref = split_angular_momentum(wf, loose());
  RArray lin(wf.grid().size()), bump(wf.grid().size());
  for (std::size_t i = 0; i < lin.size(); ++i) {
    const Vec3 k = wf.grid().k(i);
    lin[i] = dot(Vec3{0.4, 1.3, -0.6}, k);
    const Vec3 d = k - Vec3{0.9, 0.8, 1.1};
    bump[i] = 1.5 * std::exp(-dot(d, d) / 0.5);
  }
  for (const RArray* phi : {&lin, &bump}) {
    const auto wf2 = transform_amplitudes(wf, gauge_transform(wf.basis(), *phi), *phi);
    const auto sp = split_angular_momentum(wf2, loose());
    CHECK(vdiff(sp.Jo, ref.Jo) <= 1e-10 * norm(ref.Jo));
    CHECK(vdiff(sp.Js, ref.Js) <= 1e-10 * norm(ref.Js));
  }
}

TEST_CASE("quarter-turn rotations rotate Jo and Js") {
  const auto wf = field_packet();
  const auto ref = split_angular_momentum(wf);
  for (int axis = 0; axis < 3; ++axis) {
    CAPTURE(axis);
    const auto rot = rotate_quarter_turns(wf, axis, 1);
    const auto sp = split_angular_momentum(rot);
    CHECK(vdiff(sp.Jo, rotate_vector(ref.Jo, axis, 1)) <= 1e-12 * norm(ref.Jo));
    CHECK(vdiff(sp.Js, rotate_vector(ref.Js, axis, 1)) <= 1e-12 * norm(ref.Js));
  }
  const Vec3 v{1, 2, 3};
  CHECK(vdiff(rotate_vector(v, 2, 1), Vec3{-2, 1, 3}) <= 1e-15);
  CHECK(vdiff(rotate_vector(v, 0, 4), v) <= 1e-15);
}

TEST_CASE("Darwin and textbook routes reproduce the spin") {
  const auto wf = field_packet();
  const auto ph = split_angular_momentum(wf);
  const auto dw = darwin_split(spectral_e_field(wf));
  const auto f = synthesize(wf);
  auto [E, B] = electric_magnetic(f);
  const auto tb = textbook_split(E, vector_potential(B));
  CHECK(relative_difference(dw.Js, ph.Js) <= 1e-3);
  CHECK(relative_difference(tb.Js, ph.Js) <= 1e-3);
  CHECK(relative_difference(dw.Jo, ph.Jo) <= 1e-2);
}

TEST_CASE("textbook orbital part converges to the photon value") {
  double d[2];
  int i = 0;
  for (int n : {64, 128}) {
    const auto wf = field_packet(n);
    const auto ph = split_angular_momentum(wf);
    auto [E, B] = electric_magnetic(synthesize(wf));
    d[i++] = relative_difference(textbook_split(E, vector_potential(B)).Jo, ph.Jo);
  }
  MESSAGE("textbook Jo: " << d[0] << " -> " << d[1]);
  CHECK(d[0] / d[1] >= 2.0);
}

TEST_CASE("nonlocal real-space spin") {
  const auto wf = nonlocal_state();
  GradientOptions ignore{1e-8, BoundaryPolicy::Ignore};
  CovariantOptions co;
  co.gradient = ignore;
  const Vec3 js = split_angular_momentum(wf, co).Js;
  auto [E, B] = electric_magnetic(synthesize(wf));
  const Vec3 nl = spin_nonlocal_real(E, B);
  MESSAGE("nonlocal " << nl[2] << " vs photon " << js[2]);
  CHECK(relative_difference(nl, js) <= 0.05);
  CHECK(nl[2] * js[2] > 0.0);

  for (auto& c : B.v) std::fill(c.begin(), c.end(), 0.0);
  const Vec3 z = spin_nonlocal_real(E, B);
  CHECK(norm(z) == 0.0);

  auto big = electric_magnetic(synthesize(small_packet()));
  CHECK_THROWS_AS(spin_nonlocal_real(big.first, big.second), CostGuardError);
}

TEST_CASE("nonlocal potential: parallel equals serial") {
  auto g = make_grid(8, 0.7);
  RVecField src;
  for (int a = 0; a < 3; ++a) {
    const auto r = random_array(g->size(), 40 + a);
    src[a].resize(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) src[a][i] = r[i].real();
  }
  const auto p = nonlocal_potential(*g, src);
  const auto s = serial::nonlocal_potential(*g, src);
  for (int a = 0; a < 3; ++a) CHECK(p[a] == s[a]);
}
