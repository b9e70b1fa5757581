// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "poincare/algebra_checks.hpp"
#include "poincare/beams.hpp"
#include "poincare/observables.hpp"
#include "poincare/report.hpp"
#include "poincare/transform.hpp"

using namespace poincare;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double vdiff(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Smooth off-centre packet on 64^3 that decays in both spaces.
PhotonWaveFunction packet(int n, Complex a_right = 0.2) {
  GaussianVortexSpec s;
  s.k0 = {0.36, 0.24, 1.2};
  s.r0 = {1.5, -1.0, 0.5};
  s.sigma_par = s.sigma_perp = 0.26;
  s.a_left = 1.0;
  s.a_right = a_right;
  return gaussian_vortex(build_basis(make_grid(n, 1.0), {1, 0, 0}), s);
}

void bessel_ratio(Outcome& o) {
  const int n = 96;
  const BasisPtr basis = build_basis(make_grid(n, 2 * kPi / n), {1, 0, 0});
  const double k = 32.0, kz_over_k = 0.8;
  const double kz = kz_over_k * k, kp = std::sqrt(k * k - kz * kz);
  for (int h : {1, -1}) {
    const double analytic = bessel_ratio_analytic(3, kz_over_k, h);
    o.detail << "h=" << (h > 0 ? "+1" : "-1") << " (target " << analytic << "):";
    for (double sp : {4.0, 3.5, 3.0}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto wf = bessel_beam(basis, BesselSpec{kp, kz, 3, h, sp, 0.75 * sp, 1.0});
      const auto split = split_angular_momentum(wf);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const double ratio = split.Jo[2] / (h * split.Js[2]);
      const double err = (ratio - analytic) / analytic;
      o.detail << " sigma=" << sp << " ratio " << ratio << " (" << 100 * err << "%, " << secs << " s)";
      o.require(std::abs(err) <= 0.01, "ratio within 1%");
      o.require(secs < 120.0, "under 2 minutes per point");
    }
    o.detail << "; ";
  }
}

void spin_routes(Outcome& o) {
  const auto wf = packet(64, 0.0);
  const Vec3 ph = split_angular_momentum(wf).Js;
  const Vec3 dw = darwin_split(spectral_e_field(wf)).Js;
  auto [E, B] = electric_magnetic(synthesize(wf));
  const Vec3 tb = textbook_split(E, vector_potential(B)).Js;
  const double d1 = relative_difference(ph, dw), d2 = relative_difference(ph, tb), d3 = relative_difference(dw, tb);
  o.detail << "64^3 helicity/Darwin " << d1 << ", helicity/textbook " << d2 << ", Darwin/textbook " << d3;
  o.require(std::max({d1, d2, d3}) <= 1e-3, "pairwise 1e-3");

  // 16^3 circular Gaussian around 2 dk z_hat, built directly on the grid
  auto g = make_grid(16, 1.0);
  auto basis = build_basis(g, {1, 0, 0});
  const double dk = g->dk()[0], s = 1.2 * dk, r2 = 1.0 / std::sqrt(2.0);
  const CVec3 ep{r2, Complex(0.0, r2), 0.0};
  CArray gl(g->size()), gr(g->size());
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (g->excluded(i)) continue;
    const Vec3 kv = g->k(i);
    const double q = (kv[2] - 2 * dk) * (kv[2] - 2 * dk) + kv[0] * kv[0] + kv[1] * kv[1];
    const double prof = std::exp(-q / (2 * s * s));
    const CVec3 e = basis->at(i);
    gl[i] = prof * dot(conj(e), ep);
    gr[i] = 0.3 * prof * dot(e, conj(ep));
  }
  const PhotonWaveFunction small(basis, std::move(gl), std::move(gr));
  CovariantOptions ignore;
  ignore.gradient.policy = BoundaryPolicy::Ignore;
  const Vec3 js = split_angular_momentum(small, ignore).Js;
  auto [E16, B16] = electric_magnetic(synthesize(small));
  const Vec3 nl = spin_nonlocal_real(E16, B16);
  const double d4 = relative_difference(js, nl);
  o.detail << "; 16^3 nonlocal " << d4;
  o.require(d4 <= 0.05, "nonlocal within 5%");
}

void pictures(Outcome& o) {
  double dj[2], dK[2];
  for (int i = 0; i < 2; ++i) {
    const int n = i == 0 ? 64 : 128;
    const auto wf = packet(n);
    const auto ph = generators_photon_picture(wf).set;
    const auto fd = generators_field_picture(synthesize(wf));
    dj[i] = relative_difference(ph.J, fd.J);
    dK[i] = relative_difference(ph.K, fd.K);
    if (i == 0) {
      const double dh = relative_difference(ph.H, fd.H), dp = relative_difference(ph.P, fd.P);
      o.detail << "64^3 H " << dh << ", P " << dp << ", J " << dj[0] << ", K " << dK[0];
      o.require(std::max(dh, dp) <= 1e-6, "H and P within 1e-6");
      o.require(std::max(dj[0], dK[0]) <= 1e-3, "J and K within 1e-3 on 64^3");
    }
  }
  o.detail << "; 128^3 J " << dj[1] << ", K " << dK[1] << " (shrink " << dj[0] / dj[1] << "x, " << dK[0] / dK[1]
           << "x)";
  o.require(dj[0] / dj[1] >= 2.0 && dK[0] / dK[1] >= 2.0, "shrink >= 2x under refinement");
}

void conservation(Outcome& o) {
  const auto wf = packet(64);
  const auto g0 = generators_photon_picture(wf).set;
  const double period = 2 * kPi * g0.N / g0.H;
  double worst = 0.0;
  for (double t : {-10 * period, -3.7 * period, 2.2 * period, 10 * period}) {
    const auto gt = generators_photon_picture(evolve(wf, t)).set;
    worst = std::max({worst, vdiff(*gt.Jo, *g0.Jo) / norm(*g0.Jo), vdiff(*gt.Js, *g0.Js) / norm(*g0.Js)});
  }
  o.detail << "max relative change of Jo, Js over +-10 periods " << worst;
  o.require(worst <= 1e-10, "1e-10");
}

void algebra(Outcome& o) {
  const auto rows = convergence_study({32, 64}, 1.0);
  double exact_worst = 0.0, min_ratio = 1e300;
  std::string weakest;
  for (const auto& r : rows) {
    if (r.exact) {
      exact_worst = std::max({exact_worst, r.residual[0], r.residual[1]});
      continue;
    }
    if (r.residual[0] <= 1e-12 && r.residual[1] <= 1e-12) continue;
    if (r.ratio[0] < min_ratio) {
      min_ratio = r.ratio[0];
      weakest = r.relation;
    }
  }
  o.detail << rows.size() << " relations; exact residual max " << exact_worst << ", smallest 32->64 ratio " << min_ratio
           << " " << weakest;
  o.require(exact_worst <= 1e-12, "[P,P] and [H,P] 1e-12");
  o.require(min_ratio >= 3.0, "ratio >= 3");
}

void polarization(Outcome& o) {
  double identity = 0.0, prev = 0.0, ratio = 0.0;
  for (int n : {32, 64}) {
    auto g = make_grid(n, 1.0);
    for (Vec3 axis : {Vec3{0, 0, 1}, Vec3{1, 0, 0}}) identity = std::max(identity, check_identities(*build_basis(g, axis)).max());
    const auto basis = build_basis(g, {0, 0, 1});
    const int q = n / 8;
    const LoopSpec loop{2, n / 2 + q, {n / 2 + q, n / 2 + q}, {n / 2 + 2 * q, n / 2 + 2 * q}};
    const double omega = loop_solid_angle(*g, loop);
    const double mismatch = std::abs(berry_loop_integral(*basis, loop) + omega) / std::abs(omega);
    o.detail << "loop mismatch " << n << "^3 " << mismatch << "; ";
    if (prev > 0.0) ratio = prev / mismatch;
    prev = mismatch;
  }
  o.detail << "ratio " << ratio << ", identities max " << identity;
  o.require(identity <= 1e-12, "identities 1e-12");
  o.require(ratio >= 3.0, "loop O(dk^2)");
}

void round_trips(Outcome& o) {
  const auto wf = evolve(packet(64), 4.0);
  const RSField f = synthesize(wf);
  auto [E, B] = electric_magnetic(f);
  const auto back = analyze(E, B, wf.basis_ptr());
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < back.left0().size(); ++i) {
    err = std::max({err, std::abs(back.left0()[i] - wf.left0()[i]), std::abs(back.right0()[i] - wf.right0()[i])});
    ref = std::max(ref, std::abs(wf.left0()[i]));
  }
  const auto A = vector_potential(B);
  const CVecField curl = spectral_curl_r(*B.grid, to_complex(A.v));
  double num = 0.0, den = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (std::size_t i = 0; i < B.v[a].size(); ++i) {
      num += std::norm(curl[a][i] - B.v[a][i]);
      den += B.v[a][i] * B.v[a][i];
    }
  }
  const double curl_err = std::sqrt(num / den);
  const double div = relative_divergence(*A.grid, to_complex(A.v));
  const double greens = greens_function_check(*make_grid(64, 1.0)).max_mismatch;
  o.detail << "analyze(synthesize) " << err / ref << ", curl A - B " << curl_err << ", div A " << div
           << ", Green's 64^3 " << greens;
  o.require(err / ref <= 1e-10 && curl_err <= 1e-10 && div <= 1e-10, "round trips 1e-10");
  o.require(greens <= 0.02, "Green's 2%");
}

void gauge(Outcome& o) {
  const auto wf = packet(64);
  const auto ref = generators_photon_picture(wf).set;
  const GridPair& g = wf.grid();
  RArray cst(g.size(), 0.9), lin(g.size()), bump(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 k = g.k(i);
    lin[i] = dot(Vec3{2.0, -1.5, 3.0}, k);
    const Vec3 d = k - Vec3{0.3, 0.3, 1.1};
    bump[i] = 2.0 * std::exp(-dot(d, d) / (2 * 0.3 * 0.3));
  }
  double worst = 0.0;
  for (const RArray* phi : {&cst, &lin, &bump}) {
    const auto wf2 = transform_amplitudes(wf, gauge_transform(wf.basis(), *phi), *phi);
    const auto s = generators_photon_picture(wf2).set;
    worst = std::max({worst, relative_difference(s.H, ref.H), relative_difference(s.N, ref.N),
                      relative_difference(s.P, ref.P), relative_difference(s.J, ref.J),
                      relative_difference(s.K, ref.K), relative_difference(*s.Jo, *ref.Jo),
                      relative_difference(*s.Js, *ref.Js)});
  }
  o.detail << "max relative change of N, H, P, J, K, Jo, Js over constant/linear/bump phases " << worst;
  o.require(worst <= 1e-10, "1e-10");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"Bessel orbital/spin ratio", bessel_ratio},
      {"spin route agreement", spin_routes},
      {"photon/field picture equivalence", pictures},
      {"separate conservation of Jo and Js", conservation},
      {"Poincare algebra", algebra},
      {"polarization identities and Berry loop", polarization},
      {"round trips and Green's function", round_trips},
      {"gauge invariance", gauge},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
