#include "fflab/verify.hpp"

#include "fflab/bounds.hpp"
#include "fflab/fock.hpp"
#include "fflab/gaussian.hpp"
#include "fflab/gfmps.hpp"
#include "fflab/hopping.hpp"
#include "fflab/rng.hpp"
#include "fflab/spectrum.hpp"
#include "fflab/toy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace fflab {

namespace {

struct Suite {
  std::vector<CheckResult> results;

  template <typename F>
  void run(const std::string& name, F&& body) {
    CheckResult r;
    r.name = name;
    try {
      std::ostringstream detail;
      r.pass = body(detail);
      r.detail = detail.str();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
};

CorrelationMatrix random_physical_c(int n, Rng& rng) {
  const CMat u = random_unitary(n, rng.next());
  Vec d(n);
  for (int i = 0; i < n; ++i) d[i] = rng.uniform();
  return CorrelationMatrix(u * d.asDiagonal() * u.adjoint());
}

CorrelationMatrix random_physical_projector(int n, int filled, Rng& rng) {
  const CMat u = random_unitary(n, rng.next());
  return CorrelationMatrix(u.leftCols(filled) * u.leftCols(filled).adjoint());
}

} // namespace

std::vector<CheckResult> run_verification_suite(std::uint64_t seed) {
  Suite s;
  Rng rng(seed);

  s.run("majorana-roundtrip", [&](std::ostringstream& d) {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const int n = 2 + static_cast<int>(rng.next() % 15);  // up to 16
      const auto c = random_physical_c(n, rng);
      const auto back = to_correlation(to_majorana(c));
      worst = std::max(worst, (back.matrix() - c.matrix()).cwiseAbs().maxCoeff());
    }
    d << "max roundtrip error " << worst;
    return worst < 1e-12;
  });

  s.run("random-pure-purity", [&](std::ostringstream& d) {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const int n = 1 + static_cast<int>(rng.next() % 8);
      worst = std::max(worst, random_pure_gaussian(n, rng.next()).purity_defect());
      worst = std::max(worst, random_pure_gaussian(n, rng.next(), true).purity_defect());
    }
    d << "max purity defect " << worst;
    return worst < 1e-9;
  });

  s.run("oracle-overlap", [&](std::ostringstream& d) {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const int n = 2 + static_cast<int>(rng.next() % 3);  // 2..4
      const auto ga = random_pure_gaussian(n, rng.next());
      const auto gb = random_pure_gaussian(n, rng.next());
      const double gauss = gaussian_overlap(ga, gb);
      const double dense =
          std::norm(dense_overlap(dense_from_covariance(ga), dense_from_covariance(gb)));
      worst = std::max(worst, std::abs(gauss - dense));
    }
    d << "max |overlap difference| " << worst;
    return worst < 1e-8;
  });

  s.run("oracle-renyi", [&](std::ostringstream& d) {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const int n = 4 + static_cast<int>(rng.next() % 3);  // 4..6
      const int na = 2;
      const auto c = random_physical_projector(n, n / 2, rng);
      const auto psi = dense_from_correlation(c);
      const Bipartition bip = Bipartition::contiguous(na, n);
      std::vector<int> region(na);
      std::iota(region.begin(), region.end(), 0);
      const auto spec = gaussian_spectrum(restrict_modes(c, region));
      for (double alpha : {0.5, 1.0, 2.0}) {
        const double gauss = renyi_entropy(spec, alpha);
        const double dense = dense_renyi(psi, bip, alpha);
        worst = std::max(worst, std::abs(gauss - dense));
      }
    }
    d << "max |entropy difference| " << worst;
    return worst < 1e-8;
  });

  s.run("oracle-schmidt-pairs", [&](std::ostringstream& d) {
    // Dense Schmidt values equal the pair-product distribution from the
    // Gaussian SVD angles.
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const int n = 4;
      const auto g = random_pure_gaussian(n, rng.next());
      const Bipartition bip = Bipartition::contiguous(2, n);
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
        worst = std::max(worst, std::abs(pred[i] - dense[i]));
    }
    d << "max |schmidt difference| " << worst;
    return worst < 1e-8;
  });

  s.run("gsvd-reconstruction", [&](std::ostringstream& d) {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const int na = 1 + static_cast<int>(rng.next() % 4);
      const int nb = 1 + static_cast<int>(rng.next() % 4);
      const auto g = random_pure_gaussian(na + nb, rng.next());
      const Bipartition bip = Bipartition::contiguous(na, na + nb);
      const auto svd = gaussian_svd(g, bip);
      worst = std::max(worst,
                       (svd.reconstruct().matrix() - g.matrix()).cwiseAbs().maxCoeff());
    }
    d << "max reconstruction residual " << worst;
    return worst < 1e-8;
  });

  s.run("truncation-bound-tight", [&](std::ostringstream& d) {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const int n = 6;
      const auto g = random_pure_gaussian(n, rng.next());
      const Bipartition bip = Bipartition::contiguous(3, n);
      const auto svd = gaussian_svd(g, bip);
      std::vector<double> lams;
      for (double th : svd.thetas) lams.push_back(std::cos(th));
      const GaussianSpectrum spec(std::move(lams));
      for (int r = 0; r <= 3; ++r) {
        const double bound = gaussian_rank_bound(spec, r);
        const double attained = gaussian_overlap(g, optimal_gaussian_truncation(g, bip, r));
        worst = std::max(worst, std::abs(bound - attained));
      }
    }
    d << "max |bound - attained| " << worst;
    return worst < 1e-9;
  });

  s.run("thm3-assignment", [&](std::ostringstream& d) {
    double worst = 0.0;
    for (int t = 0; t < 60; ++t) {
      const int n = 2 + static_cast<int>(rng.next() % 5);  // 2..6
      std::vector<double> th(n), tt(n);
      for (auto& v : th) v = rng.uniform() * 1.5707963267948966;
      for (auto& v : tt) v = rng.uniform() * 1.5707963267948966;
      const double fast = spectra_overlap_bound(th, tt);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      double brute = 0.0;
      do {
        double p = 1.0;
        for (int i = 0; i < n; ++i) {
          const double c = std::cos((th[i] - tt[perm[i]]) / 2.0);
          p *= c * c;
        }
        brute = std::max(brute, p);
      } while (std::next_permutation(perm.begin(), perm.end()));
      worst = std::max(worst, std::abs(fast - brute));
    }
    d << "max |assignment - brute force| " << worst;
    return worst < 1e-12;
  });

  s.run("ladder-purity-unimodularity", [&](std::ostringstream& d) {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const auto rail = RailSpec::random(3, rng.next());
      for (int i = 0; i < 32; ++i) {
        const double k = -3.1 + 0.2 * i;
        worst = std::max(worst, std::abs(std::abs(rail_transfer(rail, std::polar(1.0, k))) - 1.0));
        const CMat gk = contract_momentum(rail.fiducial(), k);
        worst = std::max(worst, (gk * gk.adjoint() - CMat::Identity(2, 2)).cwiseAbs().maxCoeff());
      }
    }
    d << "max unimodularity/purity defect " << worst;
    return worst < 1e-9;
  });

  s.run("trace-norm-series-bound", [&](std::ostringstream& d) {
    double margin = 1e300;
    for (int N : {32, 48, 66, 121, 202}) {
      const int L = N / 4;
      if (L < 1) continue;
      margin = std::min(margin, trace_norm_series_bound(L, N) - trace_norm_distance(L, N));
    }
    d << "min (bound - distance) " << margin;
    return margin >= 0.0;
  });

  s.run("toy-identities", [&](std::ostringstream& d) {
    // The toy bound constrains the overlap, the rank bound its square;
    // both reduce to the same product over discarded pairs.
    double worst = 0.0;
    for (int N : {64, 256, 1024}) {
      const ToySpec spec(N, 1.0);
      std::vector<double> lams(spec.nu(), spec.lambda());
      const GaussianSpectrum g(std::move(lams));
      for (int chi = 0; chi <= spec.nu(); chi += std::max(1, spec.nu() / 5)) {
        const double a = toy_gfmps_overlap_bound(spec, chi);
        const double b = gaussian_rank_bound(g, std::min(chi, spec.nu()));
        worst = std::max(worst, std::abs(a - b));
      }
    }
    d << "max |toy bound - rank bound| " << worst;
    return worst < 1e-12;
  });

  return s.results;
}

} // namespace fflab
