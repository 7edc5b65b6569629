#include "doctest.h"

#include "fflab/bounds.hpp"
#include "fflab/fock.hpp"
#include "fflab/gaussian.hpp"
#include "fflab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

using namespace fflab;

namespace {
constexpr double kHalfPi = std::numbers::pi / 2;

double brute_force_bound(const std::vector<double>& th, const std::vector<double>& tt) {
  std::vector<int> perm(th.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0.0;
  do {
    double p = 1.0;
    for (size_t i = 0; i < th.size(); ++i) {
      const double c = std::cos((th[i] - tt[perm[i]]) / 2.0);
      p *= c * c;
    }
    best = std::max(best, p);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

MajoranaCovariance with_spectrum(const std::vector<double>& thetas, std::uint64_t seed) {
  // Random pure state with prescribed pair angles: rotate the W-normal form.
  const int n = static_cast<int>(thetas.size());
  Mat nf = Mat::Zero(4 * n, 4 * n);
  for (int j = 0; j < n; ++j) {
    const double c = std::cos(thetas[j]), s = std::sin(thetas[j]);
    nf(2 * j, 2 * j + 1) = c;
    nf(2 * j + 1, 2 * j) = -c;
    nf(2 * n + 2 * j, 2 * n + 2 * j + 1) = -c;
    nf(2 * n + 2 * j + 1, 2 * n + 2 * j) = c;
    nf(2 * j, 2 * n + 2 * j) = s;
    nf(2 * j + 1, 2 * n + 2 * j + 1) = s;
    nf(2 * n + 2 * j, 2 * j) = -s;
    nf(2 * n + 2 * j + 1, 2 * j + 1) = -s;
  }
  Mat oq = Mat::Zero(4 * n, 4 * n);
  oq.topLeftCorner(2 * n, 2 * n) = random_orthogonal(2 * n, seed);
  oq.bottomRightCorner(2 * n, 2 * n) = random_orthogonal(2 * n, seed + 77777);
  Mat local = oq * nf * oq.transpose();
  // Local layout is (A block, B block); interleave back to global modes
  // A = modes 0..n-1, B = modes n..2n-1 -- already interleaved per side.
  return MajoranaCovariance(std::move(local));
}

} // namespace

TEST_CASE("gaussian overlap") {
  SUBCASE("self-overlap of pure states is 1") {
    for (std::uint64_t seed = 1; seed < 6; ++seed) {
      const auto g = random_pure_gaussian(4, seed);
      CHECK(gaussian_overlap(g, g) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("occupied vs empty single mode") {
    CMat c0(1, 1), c1(1, 1);
    c0 << 0.0;
    c1 << 1.0;
    const auto a = to_majorana(CorrelationMatrix(c0));
    const auto b = to_majorana(CorrelationMatrix(c1));
    CHECK(gaussian_overlap(a, b) == 0.0);
    CHECK(gaussian_overlap(a, a) == doctest::Approx(1.0));
  }
  SUBCASE("agrees with the dense Fock inner product") {
    for (std::uint64_t seed = 10; seed < 25; ++seed) {
      const auto a = random_pure_gaussian(3, seed);
      const auto b = random_pure_gaussian(3, seed + 1000);
      const double dense =
          std::norm(dense_overlap(dense_from_covariance(a), dense_from_covariance(b)));
      CHECK(gaussian_overlap(a, b) == doctest::Approx(dense).epsilon(1e-9));
    }
  }
  SUBCASE("symmetric and basis invariant") {
    const auto a = random_pure_gaussian(4, 3);
    const auto b = random_pure_gaussian(4, 4);
    CHECK(gaussian_overlap(a, b) == doctest::Approx(gaussian_overlap(b, a)).epsilon(1e-12));
    const Mat r = random_orthogonal(8, 5);
    const MajoranaCovariance ra(Mat(r * a.matrix() * r.transpose()));
    const MajoranaCovariance rb(Mat(r * b.matrix() * r.transpose()));
    CHECK(gaussian_overlap(ra, rb) == doctest::Approx(gaussian_overlap(a, b)).epsilon(1e-10));
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(
        gaussian_overlap(random_pure_gaussian(2, 1), random_pure_gaussian(3, 1)),
        std::invalid_argument);
  }
}

TEST_CASE("schmidt truncation bound") {
  SUBCASE("rank n keeps everything") {
    SchmidtSpectrum s({std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)});
    CHECK(schmidt_truncation_bound(s, 3) == doctest::Approx(1.0));
    CHECK(schmidt_truncation_bound(s, 0) == doctest::Approx(0.0));
  }
  SUBCASE("uniform spectrum splits mass") {
    const int n = 8;
    SchmidtSpectrum s(std::vector<double>(n, 1.0 / std::sqrt(n)));
    CHECK(schmidt_truncation_bound(s, n / 2) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("matches dense optimal truncation on random pure states") {
    for (std::uint64_t seed = 30; seed < 40; ++seed) {
      const auto g = random_pure_gaussian(6, seed);
      const auto psi = dense_from_covariance(g);
      auto sv = dense_schmidt(psi, Bipartition::contiguous(3, 6));
      double norm2 = 0.0;
      for (double v : sv) norm2 += v * v;
      for (double& v : sv) v /= std::sqrt(norm2);
      const SchmidtSpectrum s(sv);
      for (int r : {1, 2, 4}) {
        // optimal rank-r approximation keeps the top r Schmidt terms
        double kept = 0.0;
        for (int j = 0; j < r && j < static_cast<int>(sv.size()); ++j)
          kept += s.values()[j] * s.values()[j];
        CHECK(schmidt_truncation_bound(s, r) == doctest::Approx(kept).epsilon(1e-10));
      }
    }
  }
  SUBCASE("normalization is validated") {
    CHECK_THROWS_AS(SchmidtSpectrum({1.0, 0.5}), std::invalid_argument);
  }
}

TEST_CASE("gaussian rank bound") {
  SUBCASE("direct evaluations") {
    GaussianSpectrum single({0.0});
    CHECK(gaussian_rank_bound(single, 1) == doctest::Approx(1.0));
    CHECK(gaussian_rank_bound(single, 0) == doctest::Approx(0.5));
    GaussianSpectrum spec({0.2, -0.6, 0.9});
    CHECK(gaussian_rank_bound(spec, 3) == doctest::Approx(1.0));
    CHECK(gaussian_rank_bound(spec, 1) == doctest::Approx(0.8 * 0.95).epsilon(1e-14));
  }
  SUBCASE("equals exp(-truncated entropy)") {
    GaussianSpectrum spec({0.1, -0.35, 0.62, -0.99});
    for (int r = 0; r <= 4; ++r)
      CHECK(gaussian_rank_bound(spec, r) ==
            doctest::Approx(std::exp(-truncated_entropy(spec, r))).epsilon(1e-12));
  }
  SUBCASE("monotone nondecreasing in rank") {
    GaussianSpectrum spec({0.05, 0.3, -0.55, 0.8, 0.97});
    double prev = 0.0;
    for (int r = 0; r <= 5; ++r) {
      const double b = gaussian_rank_bound(spec, r);
      CHECK(b >= prev);
      prev = b;
    }
  }
}

TEST_CASE("optimal gaussian truncation attains the bound") {
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    const int n = 3 + static_cast<int>(seed % 4);  // up to 6 + 6 modes
    const auto g = random_pure_gaussian(2 * n, seed);
    const Bipartition bip = Bipartition::contiguous(n, 2 * n);
    const auto svd = gaussian_svd(g, bip);
    std::vector<double> lams;
    for (double th : svd.thetas) lams.push_back(std::cos(th));
    const GaussianSpectrum spec(std::move(lams));
    for (int r : {0, 1, n / 2, n}) {
      const auto trunc = optimal_gaussian_truncation(g, bip, r);
      CHECK(trunc.is_pure(1e-7));
      const double attained = gaussian_overlap(g, trunc);
      CHECK(attained == doctest::Approx(gaussian_rank_bound(spec, r)).epsilon(1e-9));
    }
  }
  SUBCASE("rank zero yields a product state, full rank returns the state") {
    const auto g = random_pure_gaussian(6, 4242);
    const Bipartition bip = Bipartition::contiguous(3, 6);
    const auto full = optimal_gaussian_truncation(g, bip, 3);
    CHECK(gaussian_overlap(g, full) == doctest::Approx(1.0).epsilon(1e-9));
    const auto prod = optimal_gaussian_truncation(g, bip, 0);
    const auto svd = gaussian_svd(prod, bip);
    for (double th : svd.thetas) CHECK(th < 1e-6);
  }
}

TEST_CASE("spectra overlap assignment bound") {
  SUBCASE("identical spectra reach 1") {
    std::vector<double> th{0.3, 0.7, 1.2};
    CHECK(spectra_overlap_bound(th, th) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("single pair formula") {
    std::vector<double> a{0.0}, b{kHalfPi};
    CHECK(spectra_overlap_bound(a, b) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("assignment equals brute force at n = 6") {
    Rng rng(2024);
    for (int t = 0; t < 30; ++t) {
      std::vector<double> th(6), tt(6);
      for (auto& v : th) v = rng.uniform() * kHalfPi;
      for (auto& v : tt) v = rng.uniform() * kHalfPi;
      CHECK(spectra_overlap_bound(th, tt) ==
            doctest::Approx(brute_force_bound(th, tt)).epsilon(1e-12));
    }
  }
  SUBCASE("rank-bound specialization: tilde spectrum with n - r zeros") {
    Rng rng(77);
    std::vector<double> th(5);
    for (auto& v : th) v = rng.uniform() * kHalfPi;
    std::vector<double> sorted = th;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());  // theta desc
    std::vector<double> lams;
    for (double t : sorted) lams.push_back(std::cos(t));
    const GaussianSpectrum spec(std::move(lams));
    for (int r = 0; r <= 5; ++r) {
      std::vector<double> tt(sorted.begin(), sorted.begin() + r);
      tt.resize(5, 0.0);
      CHECK(spectra_overlap_bound(th, tt) ==
            doctest::Approx(gaussian_rank_bound(spec, r)).epsilon(1e-12));
    }
  }
  SUBCASE("sorted matching attains the maximum (observed, not assumed)") {
    // The assignment solver never relies on this, but on every sampled
    // instance the identity pairing of the two sorted angle lists is optimal.
    Rng rng(4711);
    for (int t = 0; t < 50; ++t) {
      const int n = 2 + static_cast<int>(rng.next() % 6);
      std::vector<double> th(n), tt(n);
      for (auto& v : th) v = rng.uniform() * kHalfPi;
      for (auto& v : tt) v = rng.uniform() * kHalfPi;
      const double opt = spectra_overlap_bound(th, tt);
      std::sort(th.begin(), th.end());
      std::sort(tt.begin(), tt.end());
      double sorted_value = 1.0;
      for (int i = 0; i < n; ++i) {
        const double c = std::cos((th[i] - tt[i]) / 2.0);
        sorted_value *= c * c;
      }
      CHECK(sorted_value == doctest::Approx(opt).epsilon(1e-12));
    }
  }
  SUBCASE("random same-spectra pairs never exceed the bound") {
    Rng rng(31337);
    for (int t = 0; t < 40; ++t) {
      const int n = 2 + static_cast<int>(rng.next() % 3);
      std::vector<double> th(n), tt(n);
      for (auto& v : th) v = rng.uniform() * kHalfPi;
      for (auto& v : tt) v = rng.uniform() * kHalfPi;
      const auto a = with_spectrum(th, rng.next());
      const auto b = with_spectrum(tt, rng.next());
      CHECK(gaussian_overlap(a, b) <= spectra_overlap_bound(th, tt) + 1e-9);
    }
  }
}

TEST_CASE("entropy truncation tradeoffs") {
  SUBCASE("non-gaussian truncation wins at D = 2^chi") {
    const auto t = entropy_truncation_tradeoffs(10.0, 0.5, 100.0, std::pow(2.0, 100.0));
    CHECK(t.eps_non_gaussian < 1e-20 * t.eps_gaussian);
  }
  SUBCASE("monotone in chi and D") {
    const auto a = entropy_truncation_tradeoffs(3.0, 0.5, 10.0, 100.0);
    const auto b = entropy_truncation_tradeoffs(3.0, 0.5, 20.0, 400.0);
    CHECK(b.eps_gaussian < a.eps_gaussian);
    CHECK(b.eps_non_gaussian < a.eps_non_gaussian);
  }
  SUBCASE("exponent -(1-alpha)/alpha via log-log differences") {
    const double alpha = 0.25;
    const auto a = entropy_truncation_tradeoffs(1.0, alpha, 8.0, 8.0);
    const auto b = entropy_truncation_tradeoffs(1.0, alpha, 32.0, 32.0);
    const double slope = std::log(b.eps_gaussian / a.eps_gaussian) / std::log(32.0 / 8.0);
    CHECK(slope == doctest::Approx(-(1 - alpha) / alpha).epsilon(1e-12));
  }
  SUBCASE("alpha outside (0,1) rejected") {
    CHECK_THROWS_AS(entropy_truncation_tradeoffs(1.0, 1.0, 2.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(entropy_truncation_tradeoffs(1.0, -0.2, 2.0, 2.0), std::invalid_argument);
  }
}

TEST_CASE("dense random search never beats the assignment bound") {
  // Gradient-free sampling over rotated W-normal forms with fixed spectra.
  Rng rng(555);
  for (int t = 0; t < 10; ++t) {
    const int n = 2;
    std::vector<double> th(n), tt(n);
    for (auto& v : th) v = rng.uniform() * kHalfPi;
    for (auto& v : tt) v = rng.uniform() * kHalfPi;
    const auto target = with_spectrum(th, rng.next());
    const double bound = spectra_overlap_bound(th, tt);
    double best = 0.0;
    for (int s = 0; s < 50; ++s)
      best = std::max(best, gaussian_overlap(target, with_spectrum(tt, rng.next())));
    CHECK(best <= bound + 1e-9);
  }
}
