#include "poincare/report.hpp"

#include <algorithm>

namespace poincare {

using nlohmann::json;

json to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json to_json(const Units& u) { return {{"c", u.c}, {"hbar", u.hbar}, {"eps0", u.eps0}}; }

json to_json(const GridPair& grid) {
  return {{"dims", grid.dims()},
          {"spacing", to_json(grid.spacing())},
          {"dk", to_json(grid.dk())},
          {"units", to_json(grid.units())}};
}

json to_json(const GeneratorSet& g) {
  json j{{"H", g.H}, {"P", to_json(g.P)}, {"J", to_json(g.J)}, {"K", to_json(g.K)}, {"N", g.N}};
  if (g.Jo) j["Jo"] = to_json(*g.Jo);
  if (g.Js) j["Js"] = to_json(*g.Js);
  return j;
}

json to_json(const PhotonDiagnostics& d) {
  return {{"imag_orbital", d.imag_orbital},
          {"imag_boost", d.imag_boost},
          {"orbital_parallel", d.orbital_parallel},
          {"boundary_margin", d.boundary_margin}};
}

json to_json(const AngularSplit& s) {
  return {{"Jo", to_json(s.Jo)}, {"Js", to_json(s.Js)}, {"J", to_json(s.Jo + s.Js)}, {"diagnostics", to_json(s.diag)}};
}

json to_json(const CommutatorReport& r) {
  return {{"A", r.a.name()},          {"B", r.b.name()},       {"expected", r.expected},
          {"residual", r.residual},   {"relative", r.relative}, {"dk", r.dk},
          {"exact", r.exact}};
}

json to_json(const ConvergenceRow& r) {
  return {{"relation", r.relation}, {"dk", r.dk}, {"residual", r.residual}, {"ratio", r.ratio}, {"exact", r.exact}};
}

json to_json(const IdentityResiduals& r) {
  return {{"transverse", r.transverse}, {"null", r.null},           {"unit", r.unit},
          {"spin", r.spin},             {"antipodal", r.antipodal}, {"self_cross", r.self_cross},
          {"projector", r.projector},   {"max", r.max()}};
}

double relative_difference(const Vec3& a, const Vec3& b) {
  const double s = std::max(norm(a), norm(b));
  return s > 0.0 ? norm(a - b) / s : 0.0;
}

double relative_difference(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

}  // namespace poincare
