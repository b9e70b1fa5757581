#include "poincare/field_file.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

namespace poincare {

using nlohmann::json;

namespace {

constexpr char kMagic[8] = {'P', 'O', 'I', 'N', 'C', 'A', 'R', 'E'};

void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<unsigned char>(v >> (8 * b)));
}

std::uint64_t get_u64(const std::vector<unsigned char>& in, std::size_t& pos) {
  if (pos + 8 > in.size()) throw FileFormatError("field file: truncated length field");
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= std::uint64_t(in[pos + b]) << (8 * b);
  pos += 8;
  return v;
}

json units_json(const Units& u) { return {{"c", u.c}, {"hbar", u.hbar}, {"eps0", u.eps0}}; }

json grid_json(const GridPair& g) {
  return {{"dims", g.dims()}, {"spacing", g.spacing()}, {"units", units_json(g.units())}};
}

std::size_t expected_payload(const json& m) {
  const auto dims = m.at("dims").get<std::array<int, 3>>();
  std::size_t n = 1;
  for (int d : dims) {
    if (d <= 0) throw FileFormatError("field file: non-positive dimension in manifest");
    n *= std::size_t(d);
  }
  const std::size_t comps = m.at("components").size();
  return n * comps * (m.at("complex").get<bool>() ? 2 : 1);
}

json base_manifest(const char* kind, const GridPair& g, double time, const json& meta) {
  json m = grid_json(g);
  m["format_version"] = kFormatVersion;
  m["kind"] = kind;
  m["time"] = time;
  m["layout"] = "component-major, x-major, z fastest";
  if (!meta.is_null()) m["meta"] = meta;
  return m;
}

void append_complex(std::vector<double>& p, const CArray& a) {
  for (const Complex& v : a) {
    p.push_back(v.real());
    p.push_back(v.imag());
  }
}

CArray take_complex(const std::vector<double>& p, std::size_t comp, std::size_t n) {
  CArray a(n);
  const std::size_t off = comp * n * 2;
  for (std::size_t i = 0; i < n; ++i) a[i] = Complex(p[off + 2 * i], p[off + 2 * i + 1]);
  return a;
}

void require_kind(const FieldFile& f, const char* kind) {
  if (f.kind() != kind) {
    throw FileFormatError(std::string("field file: expected kind '") + kind + "', found '" + f.kind() + "'");
  }
}

}  // namespace

const char* role_name(FieldRole role) {
  switch (role) {
    case FieldRole::E:
      return "E";
    case FieldRole::B:
      return "B";
    case FieldRole::A:
      return "A";
  }
  return "?";
}

FieldRole parse_role(const std::string& s) {
  if (s == "E") return FieldRole::E;
  if (s == "B") return FieldRole::B;
  if (s == "A") return FieldRole::A;
  throw FileFormatError("field file: unknown field role '" + s + "'");
}

std::vector<unsigned char> encode_field_file(const FieldFile& file) {
  static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);
  const std::string text = file.manifest.dump();
  std::vector<unsigned char> out(std::begin(kMagic), std::end(kMagic));
  out.reserve(8 + 16 + text.size() + 8 * file.payload.size());
  put_u64(out, text.size());
  out.insert(out.end(), text.begin(), text.end());
  put_u64(out, file.payload.size() * 8);
  for (double v : file.payload) put_u64(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

FieldFile decode_field_file(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 8) != 0) throw FileFormatError("field file: bad magic");
  std::size_t pos = 8;
  const std::uint64_t mlen = get_u64(bytes, pos);
  if (mlen > bytes.size() - pos) throw FileFormatError("field file: truncated manifest");
  FieldFile f;
  try {
    f.manifest = json::parse(bytes.begin() + std::ptrdiff_t(pos), bytes.begin() + std::ptrdiff_t(pos + mlen));
  } catch (const json::exception& e) {
    throw FileFormatError(std::string("field file: manifest is not valid JSON: ") + e.what());
  }
  pos += mlen;
  const std::uint64_t plen = get_u64(bytes, pos);
  if (plen % 8 != 0 || plen != bytes.size() - pos) throw FileFormatError("field file: payload length mismatch");
  try {
    if (f.manifest.at("format_version").get<int>() != kFormatVersion) {
      throw FileFormatError("field file: unsupported format version");
    }
    if (expected_payload(f.manifest) * 8 != plen) {
      throw FileFormatError("field file: payload size does not match manifest dims");
    }
  } catch (const json::exception& e) {
    throw FileFormatError(std::string("field file: incomplete manifest: ") + e.what());
  }
  f.payload.resize(plen / 8);
  for (double& v : f.payload) v = std::bit_cast<double>(get_u64(bytes, pos));
  return f;
}

void write_field_file(const std::string& path, const FieldFile& file) {
  const auto bytes = encode_field_file(file);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

FieldFile read_field_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FileFormatError("cannot open '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return decode_field_file(bytes);
}

GridPtr grid_from_manifest(const json& m) {
  try {
    Units u;
    const json& uj = m.at("units");
    u.c = uj.at("c").get<double>();
    u.hbar = uj.at("hbar").get<double>();
    u.eps0 = uj.at("eps0").get<double>();
    u.validate();
    return make_grid(m.at("dims").get<std::array<int, 3>>(), m.at("spacing").get<Vec3>(), u);
  } catch (const json::exception& e) {
    throw FileFormatError(std::string("field file: bad grid description: ") + e.what());
  }
}

FieldFile to_field_file(const PhotonWaveFunction& wf, const json& meta) {
  FieldFile f;
  f.manifest = base_manifest("wavefunction", wf.grid(), wf.time(), meta);
  f.manifest["components"] = {"gL", "gR"};
  f.manifest["complex"] = true;
  f.manifest["chart_axis"] = wf.basis().chart_axis;
  f.manifest["pole_eps"] = wf.basis().pole_eps;
  f.payload.reserve(4 * wf.grid().size());
  append_complex(f.payload, wf.left0());
  append_complex(f.payload, wf.right0());
  return f;
}

FieldFile to_field_file(const RSField& field, const json& meta) {
  FieldFile f;
  f.manifest = base_manifest("rs_field", *field.grid, field.time, meta);
  f.manifest["components"] = {"Fx", "Fy", "Fz"};
  f.manifest["complex"] = true;
  for (const auto& c : field.F) append_complex(f.payload, c);
  return f;
}

FieldFile to_field_file(const RealVectorField& field, const json& meta) {
  FieldFile f;
  f.manifest = base_manifest("real_field", *field.grid, field.time, meta);
  f.manifest["components"] = {"x", "y", "z"};
  f.manifest["complex"] = false;
  f.manifest["role"] = role_name(field.role);
  for (const auto& c : field.v) f.payload.insert(f.payload.end(), c.begin(), c.end());
  return f;
}

PhotonWaveFunction wavefunction_from_file(const FieldFile& file) {
  require_kind(file, "wavefunction");
  GridPtr grid = grid_from_manifest(file.manifest);
  const Vec3 axis = file.manifest.at("chart_axis").get<Vec3>();
  const double eps = file.manifest.value("pole_eps", 1e-6);
  BasisPtr basis = build_basis(grid, axis, eps);
  const std::size_t n = grid->size();
  return PhotonWaveFunction(std::move(basis), take_complex(file.payload, 0, n), take_complex(file.payload, 1, n),
                            file.manifest.at("time").get<double>());
}

RSField rs_field_from_file(const FieldFile& file) {
  require_kind(file, "rs_field");
  GridPtr grid = grid_from_manifest(file.manifest);
  RSField out{grid, {}, file.manifest.at("time").get<double>()};
  for (int a = 0; a < 3; ++a) out.F[a] = take_complex(file.payload, std::size_t(a), grid->size());
  return out;
}

RealVectorField real_field_from_file(const FieldFile& file) {
  require_kind(file, "real_field");
  GridPtr grid = grid_from_manifest(file.manifest);
  const std::size_t n = grid->size();
  RealVectorField out{grid, {}, parse_role(file.manifest.at("role").get<std::string>()),
                      file.manifest.at("time").get<double>()};
  for (int a = 0; a < 3; ++a) {
    out.v[a].assign(file.payload.begin() + std::ptrdiff_t(a * n), file.payload.begin() + std::ptrdiff_t((a + 1) * n));
  }
  return out;
}

}  // namespace poincare
