#include "fflab/bounds.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fflab {

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> values) : s_(std::move(values)) {
  double norm2 = 0.0;
  for (double v : s_) {
    if (v < -1e-12) throw std::invalid_argument("SchmidtSpectrum: negative coefficient");
    norm2 += v * v;
  }
  if (std::abs(norm2 - 1.0) > 1e-10)
    throw std::invalid_argument("SchmidtSpectrum: squares must sum to 1");
  std::sort(s_.begin(), s_.end(), std::greater<double>());
}

double gaussian_overlap(const MajoranaCovariance& a, const MajoranaCovariance& b) {
  if (a.majoranas() != b.majoranas())
    throw std::invalid_argument("gaussian_overlap: dimension mismatch");
  const Eigen::Index d = a.majoranas();
  const Eigen::Index n_modes = d / 2;
  Mat m = -a.matrix() * b.matrix();
  m.diagonal().array() += 1.0;
  Eigen::PartialPivLU<Mat> lu(m);
  // log|det| and sign, so the 2^{-N} prefactor cancels in the log domain.
  double logabs = 0.0;
  double sign = lu.permutationP().determinant() > 0 ? 1.0 : -1.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double u = lu.matrixLU()(i, i);
    if (u == 0.0) return 0.0;
    logabs += std::log(std::abs(u));
    if (u < 0.0) sign = -sign;
  }
  const double log_overlap2 = -static_cast<double>(n_modes) * std::numbers::ln2 + 0.5 * logabs;
  if (sign < 0.0) {
    if (std::exp(log_overlap2) > 1e-10)
      throw std::runtime_error("gaussian_overlap: determinant negative beyond tolerance");
    return 0.0;
  }
  return std::clamp(std::exp(log_overlap2), 0.0, 1.0);
}

double schmidt_truncation_bound(const SchmidtSpectrum& spec, int r) {
  const int n = spec.size();
  if (r < 0 || r > n) throw std::out_of_range("schmidt_truncation_bound: rank out of range");
  double tail = 0.0;
  for (int j = r; j < n; ++j) tail += spec.values()[j] * spec.values()[j];
  return 1.0 - tail;
}

double gaussian_rank_bound(const GaussianSpectrum& spec, int r) {
  const int n = spec.size();
  if (r < 0 || r > n) throw std::out_of_range("gaussian_rank_bound: rank out of range");
  double log_prod = 0.0;
  for (int i = r; i < n; ++i) log_prod += std::log((1.0 + spec.abs_lambda(i)) / 2.0);
  return std::exp(log_prod);
}

double max_assignment(const Mat& w) {
  // Hungarian method with potentials (Jonker-Volgenant style), O(n^3).
  // Internally minimizes cost = -w.
  const int n = static_cast<int>(w.rows());
  if (w.cols() != n) throw std::invalid_argument("max_assignment: square matrix required");
  if (n == 0) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);  // match[col 1..n] = row, 0 = free
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<int> way(n + 1, 0);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -w(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += w(match[j] - 1, j - 1);
  return total;
}

double spectra_overlap_bound(std::span<const double> thetas,
                             std::span<const double> thetas_tilde) {
  if (thetas.size() != thetas_tilde.size())
    throw std::invalid_argument("spectra_overlap_bound: size mismatch");
  const int n = static_cast<int>(thetas.size());
  if (n == 0) return 1.0;
  constexpr double lim = std::numbers::pi / 2 + 1e-9;
  for (double t : thetas)
    if (t < -1e-9 || t > lim) throw std::invalid_argument("spectra_overlap_bound: angle range");
  for (double t : thetas_tilde)
    if (t < -1e-9 || t > lim) throw std::invalid_argument("spectra_overlap_bound: angle range");
  Mat w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double c = std::cos((thetas[i] - thetas_tilde[j]) / 2.0);
      w(i, j) = 2.0 * std::log(std::abs(c));  // cos >= cos(pi/4) > 0 here
    }
  return std::exp(max_assignment(w));
}

MajoranaCovariance optimal_gaussian_truncation(const MajoranaCovariance& g,
                                               const Bipartition& bip, int r) {
  auto svd = gaussian_svd(g, bip);
  return svd.reconstruct(r);
}

TradeoffBounds entropy_truncation_tradeoffs(double s_alpha, double alpha, double chi,
                                            double bond_dim, double constant) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("entropy_truncation_tradeoffs: alpha must lie in (0,1)");
  if (!(s_alpha > 0.0 && chi > 0.0 && bond_dim > 0.0))
    throw std::invalid_argument("entropy_truncation_tradeoffs: positive inputs required");
  const double e = (1.0 - alpha) / alpha;
  const double amp = constant * std::pow(s_alpha, 1.0 / alpha);
  return {amp * std::pow(chi, -e), amp * std::pow(bond_dim, -e)};
}

} // namespace fflab
