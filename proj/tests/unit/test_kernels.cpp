#include <doctest.h>

#include <omp.h>

#include "helpers.hpp"
#include "poincare/kernels.hpp"

using namespace poincare;
using namespace testing_support;

TEST_CASE("tree_sum: parallel equals serial bit for bit") {
  const CArray a = random_array(100003, 3);
  auto term = [&](std::size_t i) { return std::norm(a[i]) * (1.0 + 1e-3 * double(i % 17)); };
  const double s = kernels::serial::tree_sum<double>(a.size(), term);
  for (int t : {1, 2, 3, 5}) {
    kernels::set_worker_count(t);
    CHECK(kernels::tree_sum<double>(a.size(), term) == s);
  }
  kernels::set_worker_count(0);
}

TEST_CASE("tree_sum of complex values and small sizes") {
  const CArray a = random_array(37, 4);
  auto term = [&](std::size_t i) { return a[i]; };
  Complex plain{};
  for (const auto& v : a) plain += v;
  const Complex t = kernels::tree_sum<Complex>(a.size(), term);
  CHECK(std::abs(t - plain) <= 1e-13 * std::abs(plain));
  CHECK(kernels::tree_sum<double>(0, [](std::size_t) { return 1.0; }) == 0.0);
}

TEST_CASE("difference_along_axis: parallel equals serial") {
  auto g = make_grid({10, 12, 8}, {1, 1, 1});
  const CArray a = random_array(g->size(), 5);
  for (int ax = 0; ax < 3; ++ax) {
    CArray p(a.size()), s(a.size());
    kernels::difference_along_axis<Complex>(g->dims(), 0.3, a, p, ax);
    kernels::serial::difference_along_axis<Complex>(g->dims(), 0.3, a, s, ax);
    CHECK(max_abs_diff(p, s) == 0.0);
  }
}

TEST_CASE("worker count can be capped and restored") {
  const int def = kernels::worker_count();
  kernels::set_worker_count(1);
  CHECK(kernels::worker_count() == 1);
  kernels::set_worker_count(0);
  CHECK(kernels::worker_count() == def);
}

TEST_CASE("observables do not depend on the worker count") {
  const auto wf = small_packet();
  kernels::set_worker_count(1);
  const auto a = generators_photon_picture(wf, loose());
  kernels::set_worker_count(3);
  const auto b = generators_photon_picture(wf, loose());
  kernels::set_worker_count(0);
  CHECK(a.set.H == b.set.H);
  CHECK(a.set.J == b.set.J);
  CHECK(a.set.K == b.set.K);
  CHECK(*a.set.Jo == *b.set.Jo);
}
