#pragma once

#include <utility>
#include <vector>

#include "poincare/photon_state.hpp"

namespace poincare {

/// Riemann-Silberstein vector F = sqrt(eps0/2) (E + i c B) on the real-space grid.
struct RSField {
  GridPtr grid;
  CVecField F;
  double time = 0.0;
};

enum class FieldRole { E, B, A };

struct RealVectorField {
  GridPtr grid;
  RVecField v;
  FieldRole role = FieldRole::E;
  double time = 0.0;
};

/// Time-independent plane-wave amplitudes E(k) of the electric field, so that
/// E(r, t) = sum dVk/(2 pi)^{3/2} [E(k) e^{-i w t + i k.r} + c.c.]. `time` records
/// the instant the source fields were sampled.
struct SpectralEField {
  GridPtr grid;
  CVecField E;
  double time = 0.0;
};

/// F(r, t) = sum dVk/(2 pi)^{3/2} e(k) [g_L e^{-i w t + i k.r} + g_R^* e^{i w t - i k.r}],
/// evaluated at wf.time() + t.
RSField synthesize(const PhotonWaveFunction& wf, double t = 0.0);

/// E = sqrt(2/eps0) Re F, B = sqrt(2/eps0) Im F / c.
std::pair<RealVectorField, RealVectorField> electric_magnetic(const RSField& field);
RSField rs_from_fields(const RealVectorField& E, const RealVectorField& B);

/// E(k) = e^{i w t} FT[E + (i c/|k|) curl B] / 2 for fields sampled at time t; zero at k = 0.
SpectralEField spectral_e_field(const RealVectorField& E, const RealVectorField& B);

/// E(k) = (e g_L + e^* g_R) / sqrt(2 eps0) from the t = 0 amplitudes.
SpectralEField spectral_e_field(const PhotonWaveFunction& wf);

struct AnalyzeOptions {
  /// Largest allowed ||k.E(k)|| / (|k| ||E(k)||).
  double longitudinal_tol = 1e-6;
};

/// Longitudinal fraction ||n.E(k)|| / ||E(k)|| over non-excluded points.
double longitudinal_fraction(const SpectralEField& ek);

/// g_L = sqrt(2 eps0) e^* . E(k), g_R = sqrt(2 eps0) e . E(k). Throws
/// NonRadiativeError when the longitudinal fraction exceeds the tolerance.
PhotonWaveFunction analyze(const SpectralEField& ek, BasisPtr basis, const AnalyzeOptions& opts = {});
PhotonWaveFunction analyze(const RealVectorField& E, const RealVectorField& B, BasisPtr basis,
                           const AnalyzeOptions& opts = {});

/// ||(F2 - F1)/dt + i c curl((F1 + F2)/2)|| / ||F1|| with dt = F2.time - F1.time.
double maxwell_residual(const RSField& at_t, const RSField& at_t_dt);

/// Transverse-gauge potential A(k) = i k x B(k) / |k|^2. Throws when B has a
/// uniform (k = 0) component or a divergence above 1e-6 relative.
RealVectorField vector_potential(const RealVectorField& B);

/// ||div v|| / ||grad-scale of v||: spectral divergence norm over (max |k|) ||v||.
double relative_divergence(const GridPair& grid, const CVecField& v);

/// Greens-function identity check on a periodic grid: inverse transform of
/// 1/|k|^2 (k = 0 excluded), corrected by the cubic-lattice terms
/// -2.837297/(4 pi L) + r^2/(6 L^3), compared with 1/(4 pi |r|) at lattice
/// points with L/8 <= |r| <= L/4. Requires a cubic grid.
struct GreensSample {
  Vec3 r;
  double numeric = 0.0;
  double exact = 0.0;
  double mismatch() const { return std::abs(numeric - exact) / exact; }
};
struct GreensCheck {
  std::vector<GreensSample> samples;
  double max_mismatch = 0.0;
};
GreensCheck greens_function_check(const GridPair& grid);

}  // namespace poincare
