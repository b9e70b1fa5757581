#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "poincare/algebra_checks.hpp"
#include "poincare/beams.hpp"
#include "poincare/field_file.hpp"
#include "poincare/kernels.hpp"
#include "poincare/observables.hpp"
#include "poincare/report.hpp"
#include "poincare/transform.hpp"

using namespace poincare;
using nlohmann::json;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kNumerical = 1;
constexpr int kUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

int report_error(int code, const std::string& type, const std::string& message) {
  json e{{"error", {{"type", type}, {"message", message}}}, {"exit_code", code}};
  std::cerr << e.dump() << '\n';
  return code;
}

Vec3 parse_vec3(const std::string& s) {
  if (s == "x") return {1, 0, 0};
  if (s == "y") return {0, 1, 0};
  if (s == "z") return {0, 0, 1};
  Vec3 v{};
  std::stringstream ss(s);
  std::string tok;
  int n = 0;
  while (std::getline(ss, tok, ',')) {
    if (n == 3) throw UsageError("expected three comma-separated numbers, got '" + s + "'");
    try {
      std::size_t used = 0;
      v[n++] = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + tok + "' in '" + s + "'");
    }
  }
  if (n != 3) throw UsageError("expected three comma-separated numbers, got '" + s + "'");
  return v;
}

Vec3 unit(const Vec3& v, const char* what) {
  const double n = norm(v);
  if (!(n > 0.0)) throw UsageError(std::string(what) + " must be nonzero");
  return (1.0 / n) * v;
}

int parse_axis(const std::string& s) {
  if (s == "x") return 0;
  if (s == "y") return 1;
  if (s == "z") return 2;
  throw UsageError("axis must be x, y or z");
}

int parse_helicity(const std::string& s) {
  if (s == "+1" || s == "1" || s == "+" || s == "L" || s == "l") return 1;
  if (s == "-1" || s == "-" || s == "R" || s == "r") return -1;
  throw UsageError("helicity must be +1, -1, L or R (got '" + s + "')");
}

BoundaryPolicy parse_policy(const std::string& s) {
  if (s == "throw") return BoundaryPolicy::Throw;
  if (s == "warn") return BoundaryPolicy::Warn;
  if (s == "ignore") return BoundaryPolicy::Ignore;
  throw UsageError("boundary policy must be throw, warn or ignore");
}

// Coordinate axis most perpendicular to `dir`, used as the default chart axis.
Vec3 tilted_chart(const Vec3& dir) {
  int best = 0;
  for (int a = 1; a < 3; ++a) {
    if (std::abs(dir[a]) < std::abs(dir[best])) best = a;
  }
  Vec3 v{};
  v[best] = 1.0;
  return v;
}

void apply_threads_env() {
  const char* t = std::getenv("THREADS");
  if (!t || !*t) return;
  char* end = nullptr;
  const long n = std::strtol(t, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) throw UsageError(std::string("THREADS must be a positive integer, got '") + t + "'");
  kernels::set_worker_count(int(n));
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string fmt(const Vec3& v) { return "(" + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) + ")"; }

void emit(const json& j, bool as_json, const std::string& human) {
  if (as_json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << human;
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << text;
}

json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

json file_meta(const FieldFile& f) { return f.manifest.contains("meta") ? f.manifest["meta"] : json(nullptr); }

// ---------------------------------------------------------------- beam

struct BeamArgs {
  std::string output;
  int n = 0;
  double spacing = 0.0;
  std::string chart;
  bool as_json = false;
  std::optional<int> m;
  std::string helicity = "+1";
  // bessel
  double kz_over_k = 0.8;
  double k = 0.0;
  double sigma_perp = 0.0;
  double sigma_z = 0.0;
  double amplitude = 1.0;
  // gaussian
  std::string k0 = "0,0,1.2";
  std::string r0 = "0,0,0";
  double sigma_par_g = 0.24;
  double sigma_perp_g = 0.24;
  double photons = 1.0;
};

int finish_beam(const BeamArgs& a, const PhotonWaveFunction& wf, json meta) {
  write_field_file(a.output, to_field_file(wf, meta));
  const double n = photon_number(wf);
  json out{{"output", a.output}, {"N", n}, {"boundary_margin", boundary_margin(wf)}, {"meta", meta}};
  emit(out, a.as_json,
       "wrote " + a.output + " (" + meta["beam"].get<std::string>() + ", N = " + fmt(n) +
           ", edge margin = " + fmt(boundary_margin(wf)) + ")\n");
  return kOk;
}

int cmd_bessel(const BeamArgs& a) {
  const int n = a.n > 0 ? a.n : 96;
  const double dx = a.spacing > 0.0 ? a.spacing : 2.0 * kPi / n;
  GridPtr grid = make_grid(n, dx);
  const double dk = grid->dk()[0];
  if (!(a.kz_over_k > 0.0 && a.kz_over_k < 1.0)) throw UsageError("--kz-over-k must lie in (0, 1)");
  const double k = a.k > 0.0 ? a.k : (n / 3) * dk;
  BesselSpec s;
  s.m = *a.m;
  s.helicity = parse_helicity(a.helicity);
  s.k_z0 = k * a.kz_over_k;
  s.k_perp0 = k * std::sqrt(1.0 - a.kz_over_k * a.kz_over_k);
  s.sigma_perp = a.sigma_perp > 0.0 ? a.sigma_perp : 3.0 * dk;
  s.sigma_z = a.sigma_z > 0.0 ? a.sigma_z : 0.75 * s.sigma_perp;
  s.amplitude = a.amplitude;
  const Vec3 chart = a.chart.empty() ? Vec3{1, 0, 0} : unit(parse_vec3(a.chart), "--chart-axis");
  auto wf = bessel_beam(build_basis(grid, chart), s);
  json meta{{"beam", "bessel"},
            {"m", s.m},
            {"helicity", s.helicity},
            {"kz_over_k", a.kz_over_k},
            {"k", k},
            {"k_perp0", s.k_perp0},
            {"k_z0", s.k_z0},
            {"sigma_perp", s.sigma_perp},
            {"sigma_z", s.sigma_z},
            {"amplitude", s.amplitude},
            {"analytic_ratio", bessel_ratio_analytic(s.m, a.kz_over_k, s.helicity)},
            {"analytic_signed_ratio", bessel_signed_ratio_analytic(s.m, a.kz_over_k, s.helicity)}};
  return finish_beam(a, wf, meta);
}

int cmd_gaussian(const BeamArgs& a) {
  const int n = a.n > 0 ? a.n : 64;
  const double dx = a.spacing > 0.0 ? a.spacing : 1.0;
  GridPtr grid = make_grid(n, dx);
  GaussianVortexSpec s;
  s.k0 = parse_vec3(a.k0);
  s.r0 = parse_vec3(a.r0);
  s.sigma_par = a.sigma_par_g;
  s.sigma_perp = a.sigma_perp_g;
  s.m = *a.m;
  s.photons = a.photons;
  const int h = parse_helicity(a.helicity);
  s.a_left = h > 0 ? 1.0 : 0.0;
  s.a_right = h > 0 ? 0.0 : 1.0;
  const Vec3 chart = a.chart.empty() ? tilted_chart(unit(s.k0, "--k0")) : unit(parse_vec3(a.chart), "--chart-axis");
  auto wf = gaussian_vortex(build_basis(grid, chart), s);
  json meta{{"beam", "gaussian"},  {"m", s.m},
            {"helicity", h},       {"k0", to_json(s.k0)},
            {"r0", to_json(s.r0)}, {"sigma_par", s.sigma_par},
            {"sigma_perp", s.sigma_perp}, {"photons", s.photons}};
  return finish_beam(a, wf, meta);
}

// ---------------------------------------------------------------- observables / split

struct ObsArgs {
  std::string input;
  std::string route = "all";
  std::string chart = "x";
  double boundary_tol = 1e-8;
  std::string policy = "throw";
  double field_tol = 1e-6;
  bool as_json = false;
};

CovariantOptions covariant_options(double tol, const std::string& policy) {
  CovariantOptions o;
  o.gradient = GradientOptions{tol, parse_policy(policy)};
  return o;
}

// A loaded input: either a wavefunction or real-space fields (or both, after conversion).
struct Loaded {
  std::string kind;
  std::optional<PhotonWaveFunction> wf;
  std::optional<RSField> rs;
  json meta;
};

Loaded load_state(const std::string& path) {
  const FieldFile f = read_field_file(path);
  Loaded l;
  l.kind = f.kind();
  l.meta = file_meta(f);
  if (l.kind == "wavefunction") {
    l.wf = wavefunction_from_file(f);
  } else if (l.kind == "rs_field") {
    l.rs = rs_field_from_file(f);
  } else {
    throw UsageError("'" + path + "' holds a " + l.kind + "; expected a wavefunction or rs_field file");
  }
  return l;
}

json generator_json(const GeneratorSet& g, double hbar) {
  json j = to_json(g);
  if (g.N > 0.0) j["J_per_photon_hbar"] = to_json((1.0 / (g.N * hbar)) * g.J);
  return j;
}

int cmd_observables(const ObsArgs& a) {
  static const std::vector<std::string> kRoutes{"photon", "field", "darwin", "textbook"};
  std::vector<std::string> routes;
  if (a.route == "all") {
    routes = kRoutes;
  } else if (a.route == "nonlocal" || std::find(kRoutes.begin(), kRoutes.end(), a.route) != kRoutes.end()) {
    routes = {a.route};
  } else {
    throw UsageError("--route must be all, photon, field, darwin, textbook or nonlocal");
  }
  Loaded in = load_state(a.input);
  const GridPair& grid = in.wf ? in.wf->grid() : *in.rs->grid;
  const CovariantOptions copts = covariant_options(a.boundary_tol, a.policy);
  const Vec3 chart = unit(parse_vec3(a.chart), "--chart-axis");

  if (a.route == "nonlocal" && grid.size() > kNonlocalMaxPoints) {
    throw CostGuardError("nonlocal route refused: " + std::to_string(grid.size()) + " points exceeds the limit of " +
                         std::to_string(kNonlocalMaxPoints));
  }

  // Lazily derived representations.
  std::optional<RSField> rs = in.rs;
  auto field = [&]() -> const RSField& {
    if (!rs) rs = synthesize(*in.wf);
    return *rs;
  };
  auto wavefunction = [&]() -> const PhotonWaveFunction& {
    if (!in.wf) {
      auto [E, B] = electric_magnetic(*in.rs);
      in.wf = analyze(E, B, build_basis(in.rs->grid, chart));
    }
    return *in.wf;
  };

  json report{{"input", a.input}, {"source", in.kind}, {"grid", to_json(grid)}, {"routes", json::object()}};
  if (!in.meta.is_null()) report["meta"] = in.meta;
  std::map<std::string, std::string> errors;
  std::optional<GeneratorSet> photon, fieldset;
  std::optional<AngularSplit> darwin, textbook;
  std::optional<Vec3> nonlocal;
  std::ostringstream human;
  human << "grid " << grid.dims()[0] << "x" << grid.dims()[1] << "x" << grid.dims()[2] << ", source " << in.kind
        << '\n';

  for (const auto& r : routes) {
    try {
      if (r == "photon") {
        auto pg = generators_photon_picture(wavefunction(), copts);
        photon = pg.set;
        json j = generator_json(pg.set, grid.units().hbar);
        j["diagnostics"] = to_json(pg.diag);
        j["split_closure"] = norm(*pg.set.Jo + *pg.set.Js - pg.set.J);
        report["routes"]["photon"] = j;
        human << "photon   N = " << fmt(pg.set.N) << "  H = " << fmt(pg.set.H) << "  P = " << fmt(pg.set.P)
              << "\n         J = " << fmt(pg.set.J) << "  K = " << fmt(pg.set.K) << "\n         Jo = " << fmt(*pg.set.Jo)
              << "  Js = " << fmt(*pg.set.Js) << '\n';
        if (pg.set.N > 0.0) {
          human << "         J/(N hbar) = " << fmt((1.0 / (pg.set.N * grid.units().hbar)) * pg.set.J) << '\n';
        }
      } else if (r == "field") {
        FieldPictureOptions fo;
        fo.boundary = GradientOptions{a.field_tol, parse_policy(a.policy)};
        fieldset = generators_field_picture(field(), fo);
        report["routes"]["field"] = generator_json(*fieldset, grid.units().hbar);
        human << "field    H = " << fmt(fieldset->H) << "  P = " << fmt(fieldset->P) << "\n         J = "
              << fmt(fieldset->J) << "  K = " << fmt(fieldset->K) << '\n';
      } else if (r == "darwin") {
        const SpectralEField ek = in.wf ? spectral_e_field(*in.wf) : [&] {
          auto [E, B] = electric_magnetic(field());
          return spectral_e_field(E, B);
        }();
        darwin = darwin_split(ek, copts.gradient);
        report["routes"]["darwin"] = to_json(*darwin);
        human << "darwin   Jo = " << fmt(darwin->Jo) << "  Js = " << fmt(darwin->Js) << '\n';
      } else if (r == "textbook") {
        auto [E, B] = electric_magnetic(field());
        textbook = textbook_split(E, vector_potential(B));
        report["routes"]["textbook"] = to_json(*textbook);
        human << "textbook Jo = " << fmt(textbook->Jo) << "  Js = " << fmt(textbook->Js) << '\n';
      } else if (r == "nonlocal") {
        auto [E, B] = electric_magnetic(field());
        nonlocal = spin_nonlocal_real(E, B);
        report["routes"]["nonlocal"] = {{"Js", to_json(*nonlocal)}};
        human << "nonlocal Js = " << fmt(*nonlocal) << '\n';
      }
    } catch (const CostGuardError&) {
      throw;
    } catch (const std::exception& e) {
      if (routes.size() == 1) throw;
      errors[r] = e.what();
      human << r << ": failed: " << e.what() << '\n';
    }
  }

  json deltas = json::object();
  if (photon && fieldset) {
    deltas["H_photon_field"] = relative_difference(photon->H, fieldset->H);
    deltas["P_photon_field"] = relative_difference(photon->P, fieldset->P);
    deltas["J_photon_field"] = relative_difference(photon->J, fieldset->J);
    deltas["K_photon_field"] = relative_difference(photon->K, fieldset->K);
  }
  if (photon && darwin) {
    deltas["Js_photon_darwin"] = relative_difference(*photon->Js, darwin->Js);
    deltas["Jo_photon_darwin"] = relative_difference(*photon->Jo, darwin->Jo);
  }
  if (photon && textbook) {
    deltas["Js_photon_textbook"] = relative_difference(*photon->Js, textbook->Js);
    deltas["Jo_photon_textbook"] = relative_difference(*photon->Jo, textbook->Jo);
  }
  if (darwin && textbook) deltas["Js_darwin_textbook"] = relative_difference(darwin->Js, textbook->Js);
  report["deltas"] = deltas;
  if (!deltas.empty()) {
    human << "route deltas (relative):\n";
    for (auto it = deltas.begin(); it != deltas.end(); ++it) {
      human << "  " << std::left << std::setw(20) << it.key() << fmt(it.value().get<double>()) << '\n';
    }
  }
  if (!errors.empty()) report["errors"] = errors;
  emit(report, a.as_json, human.str());
  return errors.empty() ? kOk : kNumerical;
}

int cmd_split(const ObsArgs& a, const std::string& axis_name) {
  const int axis = parse_axis(axis_name);
  Loaded in = load_state(a.input);
  if (!in.wf) {
    auto [E, B] = electric_magnetic(*in.rs);
    in.wf = analyze(E, B, build_basis(in.rs->grid, unit(parse_vec3(a.chart), "--chart-axis")));
  }
  const PhotonWaveFunction& wf = *in.wf;
  const AngularSplit s = split_angular_momentum(wf, covariant_options(a.boundary_tol, a.policy));
  const double n = photon_number(wf);
  const int h = helicity_leakage(wf, 1) <= 0.5 ? 1 : -1;
  const double ratio = s.Js[axis] != 0.0 ? s.Jo[axis] / s.Js[axis] : 0.0;
  json j = to_json(s);
  j["input"] = a.input;
  j["N"] = n;
  j["axis"] = axis_name;
  j["dominant_helicity"] = h;
  j["ratio"] = ratio;
  j["helicity_ratio"] = h * ratio;
  if (n > 0.0) j["J_per_photon_hbar"] = to_json((1.0 / (n * wf.grid().units().hbar)) * (s.Jo + s.Js));
  if (!in.meta.is_null()) j["meta"] = in.meta;
  std::ostringstream human;
  human << "N  = " << fmt(n) << "\nJo = " << fmt(s.Jo) << "\nJs = " << fmt(s.Js) << "\nJ  = " << fmt(s.Jo + s.Js)
        << '\n'
        << "Jo_" << axis_name << "/Js_" << axis_name << " = " << fmt(ratio) << "  (dominant helicity " << (h > 0 ? "+1" : "-1")
        << ", Jo/(h Js) = " << fmt(h * ratio) << ")\n";
  if (in.meta.contains("analytic_ratio")) {
    human << "analytic Jo/(h Js) = " << fmt(in.meta["analytic_ratio"].get<double>()) << '\n';
  }
  emit(j, a.as_json, human.str());
  return kOk;
}

// ---------------------------------------------------------------- synthesize / analyze / potential

int cmd_synthesize(const std::string& input, const std::string& output, double t, const std::string& what,
                   bool as_json) {
  const FieldFile f = read_field_file(input);
  const PhotonWaveFunction wf = wavefunction_from_file(f);
  const RSField rs = synthesize(wf, t);
  if (what == "rs") {
    write_field_file(output, to_field_file(rs, file_meta(f)));
  } else if (what == "E" || what == "B") {
    auto [E, B] = electric_magnetic(rs);
    write_field_file(output, to_field_file(what == "E" ? E : B, file_meta(f)));
  } else {
    throw UsageError("--field must be rs, E or B");
  }
  json j{{"output", output}, {"time", rs.time}, {"field", what}};
  emit(j, as_json, "wrote " + output + " (" + what + " at t = " + fmt(rs.time) + ")\n");
  return kOk;
}

std::pair<RealVectorField, RealVectorField> load_fields(const std::vector<std::string>& inputs) {
  if (inputs.size() == 1) {
    const FieldFile f = read_field_file(inputs[0]);
    if (f.kind() != "rs_field") throw UsageError("a single input must be an rs_field file; give E and B files otherwise");
    return electric_magnetic(rs_field_from_file(f));
  }
  std::optional<RealVectorField> E, B;
  for (const auto& p : inputs) {
    RealVectorField v = real_field_from_file(read_field_file(p));
    if (v.role == FieldRole::E) E = std::move(v);
    else if (v.role == FieldRole::B) B = std::move(v);
    else throw UsageError("'" + p + "' is not an E or B field");
  }
  if (!E || !B) throw UsageError("need one E and one B field file");
  return {std::move(*E), std::move(*B)};
}

int cmd_analyze(const std::vector<std::string>& inputs, const std::string& output, const std::string& chart,
                double tol, bool as_json) {
  if (inputs.empty() || inputs.size() > 2) throw UsageError("analyze takes one rs_field file or an E and a B file");
  auto [E, B] = load_fields(inputs);
  const SpectralEField ek = spectral_e_field(E, B);
  const double lon = longitudinal_fraction(ek);
  const PhotonWaveFunction wf = analyze(ek, build_basis(E.grid, unit(parse_vec3(chart), "--chart-axis")),
                                        AnalyzeOptions{tol});
  write_field_file(output, to_field_file(wf));
  const double n = photon_number(wf);
  json j{{"output", output}, {"N", n}, {"longitudinal_fraction", lon}, {"time", wf.time()}};
  emit(j, as_json, "wrote " + output + " (N = " + fmt(n) + ", longitudinal fraction " + fmt(lon) + ")\n");
  return kOk;
}

int cmd_potential(const std::string& input, const std::string& output, bool as_json) {
  const FieldFile f = read_field_file(input);
  RealVectorField B;
  if (f.kind() == "rs_field") {
    B = electric_magnetic(rs_field_from_file(f)).second;
  } else {
    B = real_field_from_file(f);
    if (B.role != FieldRole::B) throw UsageError("potential needs a B field or an rs_field file");
  }
  const RealVectorField A = vector_potential(B);
  const GridPair& grid = *B.grid;
  const CVecField curl = spectral_curl_r(grid, to_complex(A.v));
  double res = 0.0;
  double ref = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      res += std::norm(curl[a][i] - B.v[a][i]);
      ref += B.v[a][i] * B.v[a][i];
    }
  }
  const double curl_res = ref > 0.0 ? std::sqrt(res / ref) : 0.0;
  const double div = relative_divergence(grid, to_complex(A.v));
  write_field_file(output, to_field_file(A, file_meta(f)));
  json j{{"output", output}, {"curl_residual", curl_res}, {"relative_divergence", div}};
  emit(j, as_json,
       "wrote " + output + " (|curl A - B|/|B| = " + fmt(curl_res) + ", relative div A = " + fmt(div) + ")\n");
  return kOk;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::vector<int> grids;
  double spacing = 1.0;
  bool as_json = false;
  std::string csv;
  double tol = -1.0;
};

int finish_check(const CheckArgs& a, json j, const std::string& csv) {
  if (!a.csv.empty()) write_text(a.csv, csv);
  if (a.as_json) {
    std::cout << j.dump(2) << '\n';
  } else if (a.csv != "-") {
    std::cout << csv << (j["pass"].get<bool>() ? "PASS\n" : "FAIL\n");
  }
  return j["pass"].get<bool>() ? kOk : kNumerical;
}

int check_polarization(const CheckArgs& a) {
  const double tol = a.tol > 0.0 ? a.tol : 1e-12;
  const double min_ratio = 3.0;
  std::ostringstream csv;
  csv << "grid,transverse,null,unit,spin,antipodal,self_cross,projector,max,loop_integral,solid_angle,loop_mismatch,"
         "loop_ratio,curvature_relative,curvature_ratio\n";
  json rows = json::array();
  bool pass = true;
  double prev_loop = 0.0;
  double prev_curv = 0.0;
  for (std::size_t g = 0; g < a.grids.size(); ++g) {
    const int n = a.grids[g];
    GridPtr grid = make_grid(n, a.spacing);
    BasisPtr basis = build_basis(grid, {0, 0, 1});
    const IdentityResiduals r = check_identities(*basis);
    // The loop and the curvature sample scale with n, so the mismatch is O(dk^2)
    // across grids. Both stay well away from the chart pole line.
    const int q = n / 8;
    const LoopSpec loop{2, n / 2 + q, {n / 2 + q, n / 2 + q}, {n / 2 + 2 * q, n / 2 + 2 * q}};
    const double berry = berry_loop_integral(*basis, loop);
    const double omega = loop_solid_angle(*grid, loop);
    const double mismatch = std::abs(berry + omega) / std::abs(omega);
    const double curv = curvature_check(*basis, 2.0 * q * grid->dk()[0], 0.5).relative();
    bool ok = r.max() <= tol;
    json row = to_json(r);
    row["grid"] = n;
    row["loop_integral"] = berry;
    row["solid_angle"] = omega;
    row["loop_mismatch"] = mismatch;
    row["curvature_relative"] = curv;
    std::string lr, cr;
    if (g > 0) {
      const double lratio = prev_loop / mismatch;
      const double cratio = prev_curv / curv;
      ok = ok && lratio >= min_ratio && cratio >= min_ratio;
      row["loop_ratio"] = lratio;
      row["curvature_ratio"] = cratio;
      lr = fmt(lratio);
      cr = fmt(cratio);
    }
    prev_loop = mismatch;
    prev_curv = curv;
    pass = pass && ok;
    row["pass"] = ok;
    rows.push_back(row);
    csv << n << ',' << r.transverse << ',' << r.null << ',' << r.unit << ',' << r.spin << ',' << r.antipodal << ','
        << r.self_cross << ',' << r.projector << ',' << r.max() << ',' << berry << ',' << omega << ',' << mismatch
        << ',' << lr << ',' << curv << ',' << cr << '\n';
  }
  json j{{"check", "polarization"},
         {"thresholds", {{"identity", tol}, {"min_ratio", min_ratio}}},
         {"rows", rows},
         {"pass", pass}};
  return finish_check(a, j, csv.str());
}

int check_algebra(const CheckArgs& a) {
  if (a.grids.size() < 2) throw UsageError("check algebra needs at least two grids, e.g. --grid 32,64");
  const double exact_tol = a.tol > 0.0 ? a.tol : 1e-12;
  const double min_ratio = 3.0;
  const auto rows = convergence_study(a.grids, a.spacing);
  std::ostringstream csv;
  csv << "relation,exact,grid,dk,residual,ratio,pass\n";
  json jrows = json::array();
  bool pass = true;
  for (const auto& r : rows) {
    bool ok = true;
    bool tiny = true;
    for (double v : r.residual) tiny = tiny && v <= exact_tol;
    if (r.exact) {
      ok = tiny;
    } else if (!tiny) {
      for (double q : r.ratio) ok = ok && q >= min_ratio;
    }
    pass = pass && ok;
    json jr = to_json(r);
    jr["pass"] = ok;
    jrows.push_back(jr);
    for (std::size_t i = 0; i < r.dk.size(); ++i) {
      csv << csv_field(r.relation) << ',' << (r.exact ? "true" : "false") << ',' << a.grids[i] << ',' << r.dk[i] << ','
          << r.residual[i] << ',';
      if (i > 0) csv << r.ratio[i - 1];
      csv << ',' << (ok ? "true" : "false") << '\n';
    }
  }
  json j{{"check", "algebra"},
         {"grids", a.grids},
         {"spacing", a.spacing},
         {"thresholds", {{"exact_residual", exact_tol}, {"min_ratio", min_ratio}}},
         {"rows", jrows},
         {"pass", pass}};
  return finish_check(a, j, csv.str());
}

int check_greens(const CheckArgs& a) {
  const double tol = a.tol > 0.0 ? a.tol : 0.02;
  std::ostringstream csv;
  csv << "grid,samples,max_mismatch\n";
  json rows = json::array();
  bool pass = true;
  for (int n : a.grids) {
    const GreensCheck g = greens_function_check(*make_grid(n, a.spacing));
    const bool ok = g.max_mismatch <= tol;
    pass = pass && ok;
    rows.push_back({{"grid", n}, {"samples", g.samples.size()}, {"max_mismatch", g.max_mismatch}, {"pass", ok}});
    csv << n << ',' << g.samples.size() << ',' << g.max_mismatch << '\n';
  }
  json j{{"check", "greens"}, {"threshold", tol}, {"rows", rows}, {"pass", pass}};
  return finish_check(a, j, csv.str());
}

// ---------------------------------------------------------------- plotdata

int plot_bessel(const std::vector<std::string>& inputs, const std::string& output) {
  std::ostringstream csv;
  csv << "sigma,ratio,analytic,abs_error\n";
  for (const auto& p : inputs) {
    const json r = read_json_file(p);
    if (!r.contains("helicity_ratio") || !r.contains("meta") || !r["meta"].contains("analytic_ratio")) {
      throw UsageError("'" + p + "' is not a split report of a Bessel beam (run split --json on a beam bessel file)");
    }
    const double ratio = r["helicity_ratio"].get<double>();
    const double analytic = r["meta"]["analytic_ratio"].get<double>();
    csv << r["meta"]["sigma_perp"].get<double>() << ',' << ratio << ',' << analytic << ','
        << std::abs(ratio - analytic) << '\n';
  }
  write_text(output, csv.str());
  return kOk;
}

int plot_algebra(const std::vector<std::string>& inputs, const std::string& output) {
  std::ostringstream csv;
  csv << "relation,dk,residual\n";
  for (const auto& p : inputs) {
    const json r = read_json_file(p);
    if (r.value("check", "") != "algebra") throw UsageError("'" + p + "' is not a check algebra JSON report");
    for (const auto& row : r["rows"]) {
      const auto dk = row["dk"].get<std::vector<double>>();
      const auto res = row["residual"].get<std::vector<double>>();
      for (std::size_t i = 0; i < dk.size(); ++i) {
        csv << csv_field(row["relation"].get<std::string>()) << ',' << dk[i] << ',' << res[i] << '\n';
      }
    }
  }
  write_text(output, csv.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poincare quantities and the orbital/spin split of free electromagnetic fields"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::function<int()> run;

  // beam
  BeamArgs beam;
  auto* beam_cmd = app.add_subcommand("beam", "Build a beam wavefunction file");
  beam_cmd->require_subcommand(1);
  auto add_common_beam = [&](CLI::App* c) {
    c->add_option("--m", beam.m, "Vortex index (total Jz index for Bessel beams)")->required();
    c->add_option("--helicity", beam.helicity, "+1, -1, L or R")->capture_default_str();
    c->add_option("--grid", beam.n, "Points per axis");
    c->add_option("--spacing", beam.spacing, "Real-space spacing");
    c->add_option("--chart-axis", beam.chart, "Polarization chart axis (x, y, z or a,b,c)");
    c->add_option("-o,--output", beam.output, "Output wavefunction file")->required();
    c->add_flag("--json", beam.as_json, "Machine-readable summary");
  };
  auto* bessel_cmd = beam_cmd->add_subcommand("bessel", "Gaussian-regularized Bessel beam about z");
  add_common_beam(bessel_cmd);
  bessel_cmd->add_option("--kz-over-k", beam.kz_over_k, "k_z/k of the ring")->capture_default_str();
  bessel_cmd->add_option("--k", beam.k, "Ring wavenumber |k| (default n/3 dk)");
  bessel_cmd->add_option("--sigma-perp", beam.sigma_perp, "Transverse width (default 3 dk)");
  bessel_cmd->add_option("--sigma-z", beam.sigma_z, "Longitudinal width (default 0.75 sigma-perp)");
  bessel_cmd->add_option("--amplitude", beam.amplitude, "sqrt of the photon number")->capture_default_str();
  bessel_cmd->callback([&] { run = [&] { return cmd_bessel(beam); }; });
  auto* gauss_cmd = beam_cmd->add_subcommand("gaussian", "Smooth Gaussian vortex packet");
  add_common_beam(gauss_cmd);
  gauss_cmd->add_option("--k0", beam.k0, "Centre wave vector a,b,c")->capture_default_str();
  gauss_cmd->add_option("--r0", beam.r0, "Centre position at t = 0")->capture_default_str();
  gauss_cmd->add_option("--sigma-par", beam.sigma_par_g, "Width along k0")->capture_default_str();
  gauss_cmd->add_option("--sigma-perp", beam.sigma_perp_g, "Transverse width")->capture_default_str();
  gauss_cmd->add_option("--photons", beam.photons, "Photon number")->capture_default_str();
  gauss_cmd->callback([&] { run = [&] { return cmd_gaussian(beam); }; });

  // observables, split
  ObsArgs obs;
  std::string split_axis = "z";
  auto add_obs = [&](CLI::App* c) {
    c->add_option("input", obs.input, "Wavefunction or rs_field file")->required()->check(CLI::ExistingFile);
    c->add_option("--chart-axis", obs.chart, "Chart axis used when analyzing field files")->capture_default_str();
    c->add_option("--boundary-tol", obs.boundary_tol, "Momentum-grid edge decay required by D")->capture_default_str();
    c->add_option("--boundary-policy", obs.policy, "throw, warn or ignore")->capture_default_str();
    c->add_flag("--json", obs.as_json, "JSON report");
  };
  auto* obs_cmd = app.add_subcommand("observables", "Poincare quantities by every route");
  add_obs(obs_cmd);
  obs_cmd->add_option("--route", obs.route, "all, photon, field, darwin, textbook or nonlocal")->capture_default_str();
  obs_cmd->add_option("--field-boundary-tol", obs.field_tol, "Real-space edge decay for J, K")->capture_default_str();
  obs_cmd->callback([&] { run = [&] { return cmd_observables(obs); }; });
  auto* split_cmd = app.add_subcommand("split", "Canonical orbital/spin split");
  add_obs(split_cmd);
  split_cmd->add_option("--axis", split_axis, "Component used for the ratio")->capture_default_str();
  split_cmd->callback([&] { run = [&] { return cmd_split(obs, split_axis); }; });

  // synthesize, analyze, potential
  std::string in_path, out_path, synth_field = "rs", analyze_chart = "x";
  std::vector<std::string> in_paths;
  double synth_t = 0.0, lon_tol = 1e-6;
  bool io_json = false;
  auto* syn_cmd = app.add_subcommand("synthesize", "Wavefunction to real-space fields");
  syn_cmd->add_option("input", in_path, "Wavefunction file")->required()->check(CLI::ExistingFile);
  syn_cmd->add_option("-o,--output", out_path, "Output field file")->required();
  syn_cmd->add_option("--t", synth_t, "Time offset from the state's time stamp")->capture_default_str();
  syn_cmd->add_option("--field", synth_field, "rs, E or B")->capture_default_str();
  syn_cmd->add_flag("--json", io_json);
  syn_cmd->callback([&] { run = [&] { return cmd_synthesize(in_path, out_path, synth_t, synth_field, io_json); }; });
  auto* ana_cmd = app.add_subcommand("analyze", "Real-space fields to a wavefunction");
  ana_cmd->add_option("inputs", in_paths, "rs_field file, or E and B files")->required()->check(CLI::ExistingFile);
  ana_cmd->add_option("-o,--output", out_path, "Output wavefunction file")->required();
  ana_cmd->add_option("--chart-axis", analyze_chart, "Polarization chart axis")->capture_default_str();
  ana_cmd->add_option("--longitudinal-tol", lon_tol, "Largest accepted longitudinal fraction")->capture_default_str();
  ana_cmd->add_flag("--json", io_json);
  ana_cmd->callback([&] { run = [&] { return cmd_analyze(in_paths, out_path, analyze_chart, lon_tol, io_json); }; });
  auto* pot_cmd = app.add_subcommand("potential", "Transverse-gauge vector potential of B");
  pot_cmd->add_option("input", in_path, "rs_field or B field file")->required()->check(CLI::ExistingFile);
  pot_cmd->add_option("-o,--output", out_path, "Output A field file")->required();
  pot_cmd->add_flag("--json", io_json);
  pot_cmd->callback([&] { run = [&] { return cmd_potential(in_path, out_path, io_json); }; });

  // check
  CheckArgs pol_args, alg_args, gr_args;
  auto* check_cmd = app.add_subcommand("check", "Identity and convergence suites");
  check_cmd->require_subcommand(1);
  auto add_check = [&](CLI::App* c, CheckArgs& chk, std::vector<int> grids) {
    chk.grids = std::move(grids);
    c->add_option("--grid", chk.grids, "Grid sizes, comma separated")->delimiter(',')->capture_default_str();
    c->add_option("--spacing", chk.spacing, "Real-space spacing")->capture_default_str();
    c->add_option("--tol", chk.tol, "Override the pass threshold");
    c->add_option("--csv", chk.csv, "Write the CSV table to this file ('-' for stdout only)");
    c->add_flag("--json", chk.as_json, "JSON table on stdout");
  };
  auto* pol_cmd = check_cmd->add_subcommand("polarization", "Polarization identities and Berry loop");
  add_check(pol_cmd, pol_args, {32});
  pol_cmd->callback([&] { run = [&] { return check_polarization(pol_args); }; });
  auto* alg_cmd = check_cmd->add_subcommand("algebra", "Two-grid Poincare algebra study");
  add_check(alg_cmd, alg_args, {32, 64});
  alg_cmd->callback([&] { run = [&] { return check_algebra(alg_args); }; });
  auto* gr_cmd = check_cmd->add_subcommand("greens", "Periodic Green's function against 1/(4 pi r)");
  add_check(gr_cmd, gr_args, {64});
  gr_cmd->callback([&] { run = [&] { return check_greens(gr_args); }; });

  // plotdata
  std::vector<std::string> reports;
  std::string plot_out = "-";
  auto* plot_cmd = app.add_subcommand("plotdata", "Tidy CSV series from JSON reports");
  plot_cmd->require_subcommand(1);
  auto* pb = plot_cmd->add_subcommand("bessel", "Ratio against width from split --json reports");
  pb->add_option("reports", reports, "split --json reports")->check(CLI::ExistingFile);
  pb->add_option("-o,--output", plot_out, "CSV file ('-' for stdout)")->capture_default_str();
  pb->callback([&] { run = [&] { return plot_bessel(reports, plot_out); }; });
  auto* pa = plot_cmd->add_subcommand("algebra", "Residual against dk from check algebra --json reports");
  pa->add_option("reports", reports, "check algebra --json reports")->check(CLI::ExistingFile);
  pa->add_option("-o,--output", plot_out, "CSV file ('-' for stdout)")->capture_default_str();
  pa->callback([&] { run = [&] { return plot_algebra(reports, plot_out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(kUsage, "usage", e.what());
  }

  try {
    apply_threads_env();
    return run();
  } catch (const CostGuardError& e) {
    return report_error(kUsage, "cost_guard", e.what());
  } catch (const BoundaryDecayError& e) {
    return report_error(kNumerical, "boundary_decay", e.what());
  } catch (const NonRadiativeError& e) {
    return report_error(kNumerical, "non_radiative", e.what());
  } catch (const FileFormatError& e) {
    return report_error(kUsage, "file_format", e.what());
  } catch (const GridMismatchError& e) {
    return report_error(kUsage, "grid_mismatch", e.what());
  } catch (const std::invalid_argument& e) {
    return report_error(kUsage, "validation", e.what());
  } catch (const std::exception& e) {
    return report_error(kNumerical, "runtime", e.what());
  }
}
