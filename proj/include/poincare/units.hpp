#pragma once

#include <stdexcept>

namespace poincare {

/// Physical constants. Classical field quantities never involve hbar; it only
/// enters the photon number and per-photon operator values.
struct Units {
  double c = 1.0;
  double hbar = 1.0;
  double eps0 = 1.0;

  double mu0() const { return 1.0 / (eps0 * c * c); }

  void validate() const {
    if (!(c > 0.0) || !(hbar > 0.0) || !(eps0 > 0.0)) {
      throw std::invalid_argument("units: c, hbar and eps0 must be strictly positive");
    }
  }

  bool operator==(const Units&) const = default;
};

}  // namespace poincare
