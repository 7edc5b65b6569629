#include "doctest.h"

#include "fflab/gaussian.hpp"
#include "fflab/gfmps.hpp"
#include "fflab/hopping.hpp"
#include "fflab/bounds.hpp"

#include <cmath>
#include <numbers>

using namespace fflab;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent momentum-sum oracle for one Toeplitz entry.
Cplx momentum_entry(int N, int r) {
  Cplx acc(0, 0);
  const auto grid = MomentumGrid::ring(N);
  for (size_t t = 0; t < grid.indices.size(); ++t)
    if (is_filled(grid.indices[t], N)) acc += std::polar(1.0, grid.momenta[t] * r);
  return acc / static_cast<double>(N);
}
} // namespace

TEST_CASE("momentum grid structure") {
  for (int N : {2, 5, 6, 8, 11}) {
    const auto g = MomentumGrid::ring(N);
    CHECK(g.momenta.size() == static_cast<size_t>(N));
    CHECK(g.momenta.front() > -kPi);
    CHECK(g.momenta.back() <= kPi + 1e-15);
    for (int i = 1; i < N; ++i)
      CHECK(g.momenta[i] - g.momenta[i - 1] == doctest::Approx(2 * kPi / N));
  }
  CHECK(MomentumGrid::ring(8).m_param() == 2);
  CHECK(MomentumGrid::ring(9).m_param() == 1);
  CHECK(MomentumGrid::ring(10).m_param() == 0);
  CHECK(MomentumGrid::ring(11).m_param() == -1);
}

TEST_CASE("exact occupation") {
  SUBCASE("N = 2: k in {0, pi} filled/empty") {
    const auto g = MomentumGrid::ring(2);
    const auto occ = exact_occupation(g);
    for (size_t t = 0; t < occ.values.size(); ++t) {
      if (std::abs(g.momenta[t]) < 1e-12) CHECK(occ.values[t] == 1.0);
      if (std::abs(g.momenta[t] - kPi) < 1e-12) CHECK(occ.values[t] == 0.0);
    }
  }
  SUBCASE("N = 6 fills exactly 3 momenta") {
    const auto g = MomentumGrid::ring(6);
    const auto occ = exact_occupation(g);
    double total = 0;
    for (double v : occ.values) total += v;
    CHECK(total == 3.0);
  }
  SUBCASE("fillings approach one half") {
    for (int N : {102, 1002, 10002}) {
      const auto occ = exact_occupation(MomentumGrid::ring(N));
      double total = 0;
      for (double v : occ.values) total += v;
      CHECK(std::abs(total / N - 0.5) < 1.0 / N);
    }
  }
  SUBCASE("zero-mode convention at N = 0 mod 4") {
    const auto g = MomentumGrid::ring(8);
    const auto occ = exact_occupation(g);
    for (size_t t = 0; t < occ.values.size(); ++t) {
      if (std::abs(g.momenta[t] + kPi / 2) < 1e-12) CHECK(occ.values[t] == 1.0);
      if (std::abs(g.momenta[t] - kPi / 2) < 1e-12) CHECK(occ.values[t] == 0.0);
    }
  }
}

TEST_CASE("finite-ring correlation matrix") {
  SUBCASE("diagonal is exactly 1/2 for N = 2 mod 4") {
    for (int N : {6, 10, 334}) {
      const auto c = correlation_finite(3, N);
      CHECK(c.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
      CHECK(c.matrix()(1, 1) == c.matrix()(0, 0));
    }
  }
  SUBCASE("r = 2 entry vanishes for N = 2 mod 4") {
    for (int N : {6, 14, 66}) {
      const auto c = correlation_finite(3, N);
      CHECK(std::abs(c.matrix()(0, 2)) < 1e-15);
    }
  }
  SUBCASE("N = 6 matrix equals the direct 6-term momentum sum") {
    const auto c = correlation_finite(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        CHECK(std::abs(c.matrix()(i, j) - momentum_entry(6, j - i)) < 1e-14);
    // r = 1 entry is 1/3 by explicit evaluation of the sum.
    CHECK(c.matrix()(0, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }
  SUBCASE("closed form (1/N) sin(pi r/2 + m pi r/(2N)) / sin(pi r/N) cross-check") {
    for (int N : {9, 10, 11, 13}) {  // odd N and N = 2 mod 4: real symbols
      const int m = MomentumGrid::ring(N).m_param();
      const auto c = correlation_finite(N, N);
      for (int r = 1; r < N; ++r) {
        const double closed =
            std::sin(kPi * r / 2 + m * kPi * r / (2.0 * N)) / (N * std::sin(kPi * r / N));
        CHECK(c.matrix()(0, r).real() == doctest::Approx(closed).epsilon(1e-10));
        CHECK(std::abs(c.matrix()(0, r).imag()) < 1e-14);
      }
    }
  }
  SUBCASE("L > N throws") { CHECK_THROWS_AS(correlation_finite(7, 6), std::invalid_argument); }
}

TEST_CASE("infinite-chain correlation matrix") {
  const auto c = correlation_infinite(5);
  CHECK(c.matrix()(0, 1).real() == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(c.matrix()(0, 2).real() == 0.0);
  CHECK(c.matrix()(2, 2).real() == 0.5);
  CHECK(c.matrix()(0, 3).real() == doctest::Approx(-1.0 / (3 * kPi)).epsilon(1e-15));
}

TEST_CASE("finite symbol converges to the infinite one") {
  const int L = 4;
  const int N = 10000 * L;
  const auto fin = correlation_finite(L, N);
  const auto inf = correlation_infinite(L);
  CHECK((fin.matrix() - inf.matrix()).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("flat band energy error") {
  const auto grid = MomentumGrid::ring(6);
  SUBCASE("exact occupation gives zero") {
    CHECK(flat_band_energy_error(exact_occupation(grid), grid) == 0.0);
  }
  SUBCASE("flat 1/2 occupation gives N/2") {
    OccupationFunction occ;
    occ.values.assign(6, 0.5);
    CHECK(flat_band_energy_error(occ, grid) == doctest::Approx(3.0));
  }
  SUBCASE("ladder occupation cos^2(k/2) on N = 6") {
    // delta = sum_filled sin^2(k/2) + sum_empty cos^2(k/2)
    //       = 0 + 2 sin^2(pi/6) + 2 cos^2(pi/3) + 0 = 1.
    LadderSpec spec;  // p = q = x
    const auto occ = ladder_occupation(spec, grid);
    CHECK(flat_band_energy_error(occ, grid) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("grid mismatch throws") {
    OccupationFunction occ;
    occ.values.assign(5, 0.5);
    CHECK_THROWS_AS(flat_band_energy_error(occ, grid), std::invalid_argument);
  }
}

TEST_CASE("trace-norm distance and the series bound") {
  SUBCASE("L = N still computes the exact norm") {
    CHECK(trace_norm_distance(6, 6) >= 0.0);
    CHECK_THROWS_AS(trace_norm_series_bound(6, 6), std::domain_error);
  }
  SUBCASE("distance sequence at fixed ratio stays bounded") {
    const double phi = 0.25;
    double prev = 0.0, last = 0.0;
    std::vector<double> ds;
    for (int N : {64, 128, 256, 512}) {
      ds.push_back(trace_norm_distance(static_cast<int>(phi * N), N));
    }
    prev = ds[ds.size() - 2];
    last = ds.back();
    CHECK(last < *std::max_element(ds.begin(), ds.end()) + 1e-12);
    CHECK(std::abs(last - prev) / std::max(1e-30, prev) < 0.01);
  }
  SUBCASE("bound dominates the distance") {
    for (int N : {16, 32, 48, 66, 121, 203, 514}) {
      for (double phi : {0.125, 0.25, 0.5}) {
        const int L = std::max(1, static_cast<int>(std::lround(phi * N)));
        CHECK(trace_norm_series_bound(L, N) >= trace_norm_distance(L, N));
      }
    }
  }
}

TEST_CASE("series coefficients reproduce the quotient functions") {
  // Compare the power series against direct evaluation at small z.
  for (int m : {-1, 0, 1, 2}) {
    std::vector<double> a, b;
    trace_norm_series_coefficients(m, 25, a, b);
    const double mt = m * kPi / 2;
    for (double z : {0.05, 0.21, 0.4}) {
      double fa = 0.0, fb = 0.0, zp = 1.0;
      for (int j = 0; j < 25; ++j) {
        fa += a[j] * zp;
        fb += b[j] * zp * z;
        zp *= z * z;
      }
      const double ga = std::sin(mt * z) / std::sin(kPi * z);
      const double gb = std::cos(mt * z) / std::sin(kPi * z) - 1.0 / (kPi * z);
      CHECK(fa == doctest::Approx(ga).epsilon(1e-12));
      CHECK(fb == doctest::Approx(gb).epsilon(1e-10));
    }
  }
}

TEST_CASE("energy error dominates the fidelity error") {
  // 1 - |<occ|gs>|^2 <= delta for translation-invariant Gaussian occupations,
  // via the full overlap determinant.
  for (int N : {34, 66, 258}) {
    for (int chi : {3, 7, 11}) {
      const auto spec = build_ladder_exact_momenta(N, Strategy::log_spread, chi);
      const double delta = ladder_energy_error(spec, N);
      const auto exact = to_majorana(correlation_finite(N, N));
      const double eps = 1.0 - gaussian_overlap(ladder_to_covariance(spec, N), exact);
      CHECK(eps <= delta + 1e-12);
      CHECK(eps == doctest::Approx(ladder_infidelity(spec, N)).epsilon(1e-9));
    }
  }
}
