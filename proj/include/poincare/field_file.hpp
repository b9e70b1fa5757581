#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "poincare/fields_bridge.hpp"

namespace poincare {

// Single-file container:
//   "POINCARE" | u64 manifest length | JSON manifest | u64 payload length | payload
// Lengths and payload are little-endian. The payload holds 64-bit floats,
// component-major, x-major with z fastest inside a component, complex values
// interleaved as (re, im).

class FileFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kFormatVersion = 1;

struct FieldFile {
  nlohmann::json manifest;
  std::vector<double> payload;

  std::string kind() const { return manifest.at("kind").get<std::string>(); }
};

/// Raw container I/O. Reading validates the magic, section lengths and the
/// payload size implied by the manifest.
std::vector<unsigned char> encode_field_file(const FieldFile& file);
FieldFile decode_field_file(const std::vector<unsigned char>& bytes);
void write_field_file(const std::string& path, const FieldFile& file);
FieldFile read_field_file(const std::string& path);

/// Grid described by a manifest (dims, spacing, units).
GridPtr grid_from_manifest(const nlohmann::json& manifest);

/// Wavefunctions store t = 0 amplitudes (gL, gR), the time stamp, and the chart
/// axis and pole tolerance from which the basis is rebuilt on reading.
/// `meta` is copied into the manifest under "meta".
FieldFile to_field_file(const PhotonWaveFunction& wf, const nlohmann::json& meta = nullptr);
FieldFile to_field_file(const RSField& field, const nlohmann::json& meta = nullptr);
FieldFile to_field_file(const RealVectorField& field, const nlohmann::json& meta = nullptr);

PhotonWaveFunction wavefunction_from_file(const FieldFile& file);
RSField rs_field_from_file(const FieldFile& file);
RealVectorField real_field_from_file(const FieldFile& file);

const char* role_name(FieldRole role);
FieldRole parse_role(const std::string& s);

}  // namespace poincare
