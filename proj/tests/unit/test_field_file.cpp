#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "helpers.hpp"
#include "poincare/field_file.hpp"

using namespace poincare;
using namespace testing_support;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / (std::string("poincare_test_") + name);
}

PhotonWaveFunction sample_state() {
  const Units u{2.0, 0.5, 3.0};
  auto g = make_grid({8, 10, 12}, {0.5, 0.75, 1.0}, u);
  auto basis = build_basis(g, {0, 1, 0});
  CArray l = random_array(g->size(), 1), r = random_array(g->size(), 2);
  return PhotonWaveFunction(basis, std::move(l), std::move(r), 0.625);
}

}  // namespace

TEST_CASE("wavefunction files round trip bit for bit") {
  const auto wf = sample_state();
  const auto path = temp_file("wf.bin");
  write_field_file(path.string(), to_field_file(wf, {{"beam", "test"}}));
  const FieldFile f = read_field_file(path.string());
  CHECK(f.kind() == "wavefunction");
  CHECK(f.manifest.at("meta").at("beam") == "test");
  const auto back = wavefunction_from_file(f);
  CHECK(back.time() == wf.time());
  CHECK(back.grid().same_layout(wf.grid()));
  CHECK(back.grid().units() == wf.grid().units());
  CHECK(back.left0() == wf.left0());
  CHECK(back.right0() == wf.right0());
  CHECK(back.basis().chart_axis == wf.basis().chart_axis);

  // write, read, write gives identical bytes
  const auto bytes = encode_field_file(f);
  CHECK(encode_field_file(decode_field_file(bytes)) == bytes);
  std::filesystem::remove(path);
}

TEST_CASE("RS and real field files round trip") {
  const auto wf = sample_state();
  const RSField rs = synthesize(wf);
  const auto rs2 = rs_field_from_file(decode_field_file(encode_field_file(to_field_file(rs))));
  CHECK(rs2.time == rs.time);
  for (int a = 0; a < 3; ++a) CHECK(rs2.F[a] == rs.F[a]);

  auto [E, B] = electric_magnetic(rs);
  for (const auto* field : {&E, &B}) {
    const auto back = real_field_from_file(decode_field_file(encode_field_file(to_field_file(*field))));
    CHECK(back.role == field->role);
    CHECK(back.time == field->time);
    for (int a = 0; a < 3; ++a) CHECK(back.v[a] == field->v[a]);
  }
  CHECK(parse_role(role_name(FieldRole::A)) == FieldRole::A);
  CHECK_THROWS_AS(parse_role("Q"), FileFormatError);
}

TEST_CASE("corrupt files are rejected") {
  const auto bytes = encode_field_file(to_field_file(sample_state()));

  auto bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_WITH_AS(decode_field_file(bad), doctest::Contains("magic"), FileFormatError);

  auto cut = bytes;
  cut.resize(bytes.size() - 8);
  CHECK_THROWS_AS(decode_field_file(cut), FileFormatError);
  cut.resize(12);
  CHECK_THROWS_AS(decode_field_file(cut), FileFormatError);

  // payload consistent with its own length but not with the manifest dims
  FieldFile f = decode_field_file(bytes);
  f.manifest["dims"] = {8, 10, 10};
  CHECK_THROWS_WITH_AS(decode_field_file(encode_field_file(f)), doctest::Contains("dims"), FileFormatError);

  FieldFile v = decode_field_file(bytes);
  v.manifest["format_version"] = kFormatVersion + 1;
  CHECK_THROWS_WITH_AS(decode_field_file(encode_field_file(v)), doctest::Contains("version"), FileFormatError);

  // reading a wavefunction as an RS field
  CHECK_THROWS_WITH_AS(rs_field_from_file(decode_field_file(bytes)), doctest::Contains("expected kind"),
                       FileFormatError);
  CHECK_THROWS_AS(read_field_file(temp_file("does_not_exist").string()), FileFormatError);
}
