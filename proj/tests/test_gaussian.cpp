#include "doctest.h"

#include "fflab/fock.hpp"
#include "fflab/gaussian.hpp"
#include "fflab/hopping.hpp"
#include "fflab/rng.hpp"

#include <cmath>
#include <numbers>

using namespace fflab;

namespace {

CorrelationMatrix random_physical(int n, std::uint64_t seed) {
  Rng rng(seed);
  const CMat u = random_unitary(n, rng.next());
  Vec d(n);
  for (int i = 0; i < n; ++i) d[i] = rng.uniform();
  return CorrelationMatrix(u * d.asDiagonal() * u.adjoint());
}

// Covariance of cos(t)|00> + sin(t)|11>, a BCS-paired two-mode state, built
// from the dense oracle.
MajoranaCovariance bcs_pair(double t) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(4);
  amp[0] = std::cos(t);
  amp[3] = std::sin(t);
  return MajoranaCovariance(dense_covariance_of(DenseState{amp, 2}));
}

} // namespace

TEST_CASE("to_majorana single-mode conventions") {
  CMat empty(1, 1), filled(1, 1), half(1, 1);
  empty << 0.0;
  filled << 1.0;
  half << 0.5;
  Mat j(2, 2);
  j << 0, 1, -1, 0;
  CHECK((to_majorana(CorrelationMatrix(empty)).matrix() - j).cwiseAbs().maxCoeff() == 0.0);
  CHECK((to_majorana(CorrelationMatrix(filled)).matrix() + j).cwiseAbs().maxCoeff() == 0.0);
  CHECK(to_majorana(CorrelationMatrix(half)).matrix().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("to_correlation inverts to_majorana") {
  Mat zero = Mat::Zero(2, 2);
  const auto c = to_correlation(MajoranaCovariance(zero));
  CHECK(c.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto orig = random_physical(5, seed);
    const auto back = to_correlation(to_majorana(orig));
    CHECK((back.matrix() - orig.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("to_correlation rejects paired states") {
  const auto g = bcs_pair(std::numbers::pi / 4);
  CHECK(g.is_pure());
  CHECK(pairing_block(g).cwiseAbs().maxCoeff() > 0.1);
  CHECK_THROWS_WITH_AS(to_correlation(g), doctest::Contains("not number-conserving"),
                       std::invalid_argument);
}

TEST_CASE("roundtrip property over random physical matrices") {
  // 1000 draws, n <= 16, exactness to 1e-12.
  Rng pick(99);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(pick.next() % 16);
    const auto orig = random_physical(n, pick.next());
    const auto back = to_correlation(to_majorana(orig));
    worst = std::max(worst, (back.matrix() - orig.matrix()).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("to_majorana validates physicality") {
  CMat bad(2, 2);
  bad << 1.2, 0.0, 0.0, 0.3;
  CHECK_THROWS_AS(CorrelationMatrix{bad}, std::invalid_argument);
  // Hermitian, diagonal fine, but an eigenvalue sticks out above 1.
  CMat sneaky(2, 2);
  sneaky << 0.9, 0.4, 0.4, 0.9;
  CHECK_THROWS_AS(to_majorana(CorrelationMatrix(sneaky)), std::invalid_argument);
}

TEST_CASE("random pure states are pure and deterministic") {
  for (std::uint64_t seed : {1ULL, 7ULL, 1234567ULL}) {
    const auto g = random_pure_gaussian(6, seed);
    CHECK(g.purity_defect() < 1e-9);
    const auto again = random_pure_gaussian(6, seed);
    CHECK((g.matrix() - again.matrix()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("number-conserving random states convert back") {
  for (std::uint64_t seed : {2ULL, 3ULL, 4ULL}) {
    const auto g = random_pure_gaussian(7, seed, true);
    CHECK(g.purity_defect() < 1e-9);
    CHECK(pairing_block(g).cwiseAbs().maxCoeff() < 1e-12);
    const auto c = to_correlation(g);
    CHECK(c.is_physical());
  }
}

TEST_CASE("restrict_modes") {
  const auto c = correlation_infinite(8);
  SUBCASE("full region is the identity operation") {
    std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK((restrict_modes(c, all).matrix() - c.matrix()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("single site at half filling") {
    std::vector<int> one{3};
    CHECK(restrict_modes(c, one).matrix()(0, 0).real() == doctest::Approx(0.5));
  }
  SUBCASE("two-site block of the infinite chain") {
    std::vector<int> two{2, 3};
    const auto sub = restrict_modes(c, two);
    CHECK(sub.matrix()(0, 0).real() == doctest::Approx(0.5));
    CHECK(sub.matrix()(0, 1).real() == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
    CHECK(sub.matrix()(1, 0).real() == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
  }
  SUBCASE("out of range throws") {
    std::vector<int> bad{7, 8};
    CHECK_THROWS_AS(restrict_modes(c, bad), std::out_of_range);
  }
}

TEST_CASE("restrict commutes with to_majorana") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = random_physical(6, seed);
    std::vector<int> region{1, 3, 4};
    const auto a = to_majorana(restrict_modes(c, region));
    const auto b = restrict_majorana(to_majorana(c), region);
    CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("dense oracle reproduces covariances of random pure states") {
  for (std::uint64_t seed = 11; seed < 16; ++seed) {
    const auto g = random_pure_gaussian(5, seed);
    const auto psi = dense_from_covariance(g);
    CHECK((dense_covariance_of(psi) - g.matrix()).cwiseAbs().maxCoeff() < 1e-8);
  }
}
