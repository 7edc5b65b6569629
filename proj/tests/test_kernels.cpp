#include "doctest.h"

#include "fflab/gfmps.hpp"
#include "fflab/hopping.hpp"
#include "fflab/kernels.hpp"

#include <cmath>

using namespace fflab;

TEST_CASE("parallel symbol equals the serial reference bit for bit") {
  for (int N : {6, 37, 128, 515}) {
    const auto par = hopping_symbol(N, N, Execution::parallel);
    const auto ser = hopping_symbol(N, N, Execution::serial);
    const auto ref = reference::hopping_symbol(N, N);
    REQUIRE(par.size() == ref.size());
    for (size_t r = 0; r < par.size(); ++r) {
      CHECK(par[r] == ser[r]);
      CHECK(par[r] == ref[r]);
    }
  }
}

TEST_CASE("scan results independent of execution policy") {
  const std::vector<int> Ns{34, 66, 130};
  const auto a = bond_dimension_scan(Ns, 1e-2, Strategy::log_spread, Execution::parallel);
  const auto b = bond_dimension_scan(Ns, 1e-2, Strategy::log_spread, Execution::serial);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].N == b[i].N);
    CHECK(a[i].chi_majorana == b[i].chi_majorana);
    CHECK(a[i].delta == b[i].delta);      // bit-identical
    CHECK(a[i].epsilon == b[i].epsilon);  // bit-identical
  }
}

TEST_CASE("parallel_for covers every index once") {
  std::vector<int> hits(1003, 0);
  parallel_for(1003, [&](std::int64_t i) { hits[i]++; }, Execution::parallel);
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("infinite symbol values") {
  const auto c = infinite_symbol(6);
  CHECK(c[0] == 0.5);
  CHECK(c[2] == doctest::Approx(0.0));
  CHECK(c[1] == doctest::Approx(1.0 / std::numbers::pi));
  CHECK(c[3] == doctest::Approx(-1.0 / (3 * std::numbers::pi)));
}
