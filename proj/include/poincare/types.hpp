#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace poincare {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;
using RArray = std::vector<double>;
using CArray = std::vector<Complex>;
// Component-planar vector fields: one array per Cartesian component.
using RVecField = std::array<RArray, 3>;
using CVecField = std::array<CArray, 3>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3& operator+=(Vec3& a, const Vec3& b) {
  a[0] += b[0];
  a[1] += b[1];
  a[2] += b[2];
  return a;
}
inline CVec3 operator+(const CVec3& a, const CVec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline CVec3& operator+=(CVec3& a, const CVec3& b) {
  a[0] += b[0];
  a[1] += b[1];
  a[2] += b[2];
  return a;
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Bilinear (no conjugation) products for complex vectors.
inline Complex dot(const CVec3& a, const CVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline CVec3 conj(const CVec3& a) { return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])}; }

/// Thrown when an array does not decay near the edge of its grid, which makes
/// derivative-based or position-weighted quantities unreliable.
class BoundaryDecayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by field analysis when the input carries longitudinal (non-radiative) content.
class NonRadiativeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Refusal of an O(n^2) computation on a grid that is too large.
class CostGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace poincare
