#include "doctest.h"

#include "fflab/fock.hpp"
#include "fflab/gaussian.hpp"
#include "fflab/rng.hpp"
#include "fflab/spectrum.hpp"

#include <cmath>
#include <numbers>

using namespace fflab;

namespace {

CorrelationMatrix random_projector(int n, int filled, std::uint64_t seed) {
  const CMat u = random_unitary(n, seed);
  return CorrelationMatrix(u.leftCols(filled) * u.leftCols(filled).adjoint());
}

} // namespace

TEST_CASE("dense from correlation") {
  SUBCASE("basis state |10>") {
    CMat c = CMat::Zero(2, 2);
    c(0, 0) = 1.0;
    const auto psi = dense_from_correlation(CorrelationMatrix(c));
    CHECK(std::abs(psi.amp[0b01]) == doctest::Approx(1.0));  // mode 0 occupied
    CHECK(std::abs(psi.amp[0b00]) < 1e-14);
    CHECK(std::abs(psi.amp[0b10]) < 1e-14);
    CHECK(std::abs(psi.amp[0b11]) < 1e-14);
  }
  SUBCASE("maximally entangled two-site pair") {
    CMat c(2, 2);
    c << 0.5, 0.5, 0.5, 0.5;
    const auto psi = dense_from_correlation(CorrelationMatrix(c));
    // (|10> + |01>)/sqrt(2) up to convention: both one-particle amplitudes 1/sqrt2.
    CHECK(std::abs(psi.amp[0b01]) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(psi.amp[0b10]) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(psi.amp[0b00]) < 1e-14);
  }
  SUBCASE("expectations reproduce C on random projectors") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto c = random_projector(6, 3, seed);
      const auto psi = dense_from_correlation(c);
      CHECK((dense_correlation_of(psi) - c.matrix()).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(dense_pairing_of(psi).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SUBCASE("non-projector input throws") {
    CMat c = CMat::Zero(2, 2);
    c(0, 0) = 0.5;
    CHECK_THROWS_AS(dense_from_correlation(CorrelationMatrix(c)), std::invalid_argument);
  }
}

TEST_CASE("dense from covariance") {
  SUBCASE("vacuum maps to |0...0>") {
    Mat g0 = Mat::Zero(6, 6);
    for (int j = 0; j < 3; ++j) {
      g0(2 * j, 2 * j + 1) = 1.0;
      g0(2 * j + 1, 2 * j) = -1.0;
    }
    const auto psi = dense_from_covariance(MajoranaCovariance(g0));
    CHECK(std::abs(psi.amp[0]) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("W(theta) pair lives in the one-particle sector") {
    const double th = 1.1;
    Mat w = Mat::Zero(4, 4);
    w(0, 1) = std::cos(th);
    w(1, 0) = -std::cos(th);
    w(2, 3) = -std::cos(th);
    w(3, 2) = std::cos(th);
    w(0, 2) = std::sin(th);
    w(1, 3) = std::sin(th);
    w(2, 0) = -std::sin(th);
    w(3, 1) = -std::sin(th);
    const auto psi = dense_from_covariance(MajoranaCovariance(w));
    // occupations (1 -+ cos)/2 on the two modes, no |00>/|11> weight
    CHECK(std::abs(psi.amp[0b00]) < 1e-9);
    CHECK(std::abs(psi.amp[0b11]) < 1e-9);
    CHECK(std::norm(psi.amp[0b01]) == doctest::Approx((1 - std::cos(th)) / 2).epsilon(1e-9));
    CHECK(std::norm(psi.amp[0b10]) == doctest::Approx((1 + std::cos(th)) / 2).epsilon(1e-9));
  }
  SUBCASE("roundtrip expectations on random pure states") {
    for (std::uint64_t seed = 21; seed <= 25; ++seed) {
      const auto g = random_pure_gaussian(5, seed);
      const auto psi = dense_from_covariance(g);
      CHECK((dense_covariance_of(psi) - g.matrix()).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
  SUBCASE("mode cap enforced") {
    Mat g0 = Mat::Zero(2 * 13, 2 * 13);
    for (int j = 0; j < 13; ++j) {
      g0(2 * j, 2 * j + 1) = 1.0;
      g0(2 * j + 1, 2 * j) = -1.0;
    }
    CHECK_THROWS_AS(dense_from_covariance(MajoranaCovariance(g0)), std::invalid_argument);
  }
}

TEST_CASE("dense overlap, schmidt and renyi") {
  SUBCASE("normalization and product states") {
    const auto psi = dense_from_correlation(random_projector(4, 2, 5));
    CHECK(std::abs(dense_overlap(psi, psi)) == doctest::Approx(1.0).epsilon(1e-12));
    CMat prod = CMat::Zero(4, 4);
    prod(0, 0) = 1.0;
    prod(2, 2) = 1.0;
    const auto sep = dense_from_correlation(CorrelationMatrix(prod));
    const auto sv = dense_schmidt(sep, Bipartition::contiguous(2, 4));
    CHECK(sv[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t i = 1; i < sv.size(); ++i) CHECK(sv[i] < 1e-12);
  }
  SUBCASE("dense renyi equals the gaussian formula") {
    for (std::uint64_t seed = 41; seed < 49; ++seed) {
      const auto c = random_projector(8, 4, seed);
      const auto psi = dense_from_correlation(c);
      std::vector<int> region{0, 1, 2, 3};
      const auto spec = gaussian_spectrum(restrict_modes(c, region));
      const Bipartition bip = Bipartition::contiguous(4, 8);
      for (double alpha : {0.5, 1.0, 2.0, std::numeric_limits<double>::infinity()}) {
        CHECK(dense_renyi(psi, bip, alpha) ==
              doctest::Approx(renyi_entropy(spec, alpha)).epsilon(1e-8));
      }
    }
  }
  SUBCASE("noncontiguous bipartitions carry the fermionic signs") {
    for (std::uint64_t seed = 61; seed < 64; ++seed) {
      const auto c = random_projector(6, 3, seed);
      const auto psi = dense_from_correlation(c);
      std::vector<int> left{0, 2, 4}, right{1, 3, 5};
      const auto spec = gaussian_spectrum(restrict_modes(c, left));
      const Bipartition bip(left, right);
      CHECK(dense_renyi(psi, bip, 2.0) ==
            doctest::Approx(renyi_entropy(spec, 2.0)).epsilon(1e-8));
    }
  }
  SUBCASE("schmidt values match the gaussian pair products") {
    for (std::uint64_t seed = 71; seed < 76; ++seed) {
      const auto g = random_pure_gaussian(5, seed);
      const Bipartition bip = Bipartition::contiguous(2, 5);
      const auto svd = gaussian_svd(g, bip);
      std::vector<double> pred{1.0};
      for (double th : svd.thetas) {
        std::vector<double> nxt;
        for (double w : pred) {
          nxt.push_back(w * std::cos(th / 2.0));
          nxt.push_back(w * std::sin(th / 2.0));
        }
        pred = std::move(nxt);
      }
      std::sort(pred.begin(), pred.end(), std::greater<double>());
      auto dense = dense_schmidt(dense_from_covariance(g), bip);
      dense.resize(pred.size(), 0.0);
      for (size_t i = 0; i < pred.size(); ++i)
        CHECK(dense[i] == doctest::Approx(pred[i]).epsilon(1e-8));
    }
  }
}
