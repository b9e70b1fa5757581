#include <doctest.h>

#include "helpers.hpp"

using namespace poincare;
using namespace testing_support;

TEST_CASE("operator tags parse and print") {
  for (const char* s : {"H", "Px", "Py", "Pz", "Jx", "Jy", "Jz", "Kx", "Ky", "Kz", "Dx", "Dy", "Dz"}) {
    CHECK(OperatorTag::parse(s).name() == s);
  }
  CHECK(OperatorTag::parse("Ky").kind == Generator::K);
  CHECK(OperatorTag::parse("Ky").axis == 1);
  for (const char* bad : {"", "Q", "Jw", "J", "Pxx", "h"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(OperatorTag::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("relation table covers the algebra") {
  const auto t = relation_table();
  CHECK(t.size() == 22);
  CHECK_THROWS_AS(expected_commutator(OperatorTag::parse("Dx"), OperatorTag::parse("Px"),
                                      algebra_test_state(make_grid(16, 2.0))),
                  std::invalid_argument);
}

TEST_CASE("relations between multiplication operators hold to rounding") {
  const auto wf = algebra_test_state(make_grid(32, 1.0));
  int exact = 0;
  for (const auto& r : run_relations(wf, algebra_options())) {
    if (!r.exact) continue;
    CAPTURE(r.a.name());
    CAPTURE(r.b.name());
    CHECK(r.residual <= 1e-12);
    ++exact;
  }
  CHECK(exact >= 3);
}

TEST_CASE("derivative relations converge at second order") {
  const auto rows = convergence_study({32, 64}, 1.0);
  CHECK(rows.size() == relation_table().size());
  for (const auto& row : rows) {
    CAPTURE(row.relation);
    REQUIRE(row.ratio.size() == 1);
    CHECK(row.dk[0] == doctest::Approx(2 * row.dk[1]));
    const bool tiny = row.residual[0] <= 1e-12 && row.residual[1] <= 1e-12;
    if (row.exact) {
      CHECK(tiny);
    } else {
      CHECK((row.ratio[0] >= 3.0 || tiny));
    }
  }
}

TEST_CASE("D curvature matches the monopole field") {
  const auto wf = algebra_test_state(make_grid(32, 1.0));
  const auto r = check_curvature(wf, 0, 1, algebra_options());
  CHECK(r.relative <= 1e-2);
}

TEST_CASE("negative control: a flipped connection stops converging") {
  auto good = algebra_options();
  good.stencil = CovariantStencil::Connection;
  auto bad = good;
  bad.connection_sign = -1.0;
  for (std::string pair : {"DxDy", "JxJy", "JzKx"}) {
    CAPTURE(pair);
    const auto a = OperatorTag::parse(pair.substr(0, 2));
    const auto b = OperatorTag::parse(pair.substr(2, 2));
    double ok[2], ko[2];
    int i = 0;
    for (int n : {32, 64}) {
      const auto wf = algebra_test_state(make_grid(n, 1.0));
      ok[i] = check_commutator(a, b, wf, good).residual;
      ko[i] = check_commutator(a, b, wf, bad).residual;
      ++i;
    }
    MESSAGE(pair << ": connection " << ok[0] << " -> " << ok[1] << ", flipped " << ko[0] << " -> " << ko[1]);
    CHECK(ok[0] / ok[1] >= 3.0);
    CHECK(ko[0] / ko[1] < 1.5);
    CHECK(ko[1] > 2.0 * ok[1]);
  }
}
