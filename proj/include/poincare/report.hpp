#pragma once

#include <json.hpp>

#include "poincare/algebra_checks.hpp"
#include "poincare/observables.hpp"
#include "poincare/polarization.hpp"

namespace poincare {

nlohmann::json to_json(const Vec3& v);
nlohmann::json to_json(const Units& u);
nlohmann::json to_json(const GridPair& grid);
nlohmann::json to_json(const GeneratorSet& g);
nlohmann::json to_json(const PhotonDiagnostics& d);
nlohmann::json to_json(const AngularSplit& s);
nlohmann::json to_json(const CommutatorReport& r);
nlohmann::json to_json(const ConvergenceRow& r);
nlohmann::json to_json(const IdentityResiduals& r);

/// |a - b| / max(|a|, |b|), 0 when both vanish.
double relative_difference(const Vec3& a, const Vec3& b);
double relative_difference(double a, double b);

}  // namespace poincare
