#include "fflab/spectrum.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fflab {

namespace {
constexpr double kPi = std::numbers::pi;

void sort_by_abs(std::vector<double>& l) {
  std::sort(l.begin(), l.end(), [](double x, double y) {
    const double ax = std::abs(x), ay = std::abs(y);
    if (ax != ay) return ax < ay;
    return x < y;
  });
}
} // namespace

GaussianSpectrum::GaussianSpectrum(std::vector<double> lambdas) : l_(std::move(lambdas)) {
  for (double& v : l_) {
    if (std::abs(v) > 1.0 + kPhysTol)
      throw std::invalid_argument("GaussianSpectrum: |lambda| exceeds 1");
    v = std::clamp(v, -1.0, 1.0);
  }
  sort_by_abs(l_);
}

GaussianSpectrum gaussian_spectrum(const CorrelationMatrix& c_r) {
  const Eigen::Index n = c_r.modes();
  Vec ev;
  if (c_r.max_imag() < 1e-13) {
    Eigen::SelfAdjointEigenSolver<Mat> es(c_r.matrix().real(), Eigen::EigenvaluesOnly);
    ev = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<CMat> es(c_r.matrix(), Eigen::EigenvaluesOnly);
    ev = es.eigenvalues();
  }
  std::vector<double> l(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ev[i] < -kPhysTol || ev[i] > 1.0 + kPhysTol)
      throw std::invalid_argument("gaussian_spectrum: unphysical correlation matrix");
    l[i] = std::clamp(2.0 * ev[i] - 1.0, -1.0, 1.0);
  }
  return GaussianSpectrum(std::move(l));
}

double renyi_term(double lambda, double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("renyi_term: alpha must be positive");
  lambda = std::clamp(lambda, -1.0, 1.0);
  const double p = (1.0 + lambda) / 2.0;
  const double q = (1.0 - lambda) / 2.0;
  if (std::isinf(alpha)) return -std::log(std::max(p, q));
  if (alpha == 1.0) {
    double s = 0.0;
    if (p > 0.0) s -= p * std::log(p);
    if (q > 0.0) s -= q * std::log(q);
    return s;
  }
  return std::log(std::pow(p, alpha) + std::pow(q, alpha)) / (1.0 - alpha);
}

double renyi_entropy(const GaussianSpectrum& spec, double alpha) {
  double s = 0.0;
  for (double l : spec.lambdas()) s += renyi_term(l, alpha);
  return s;
}

double truncated_entropy(const GaussianSpectrum& spec, int r) {
  const int n = spec.size();
  if (r < 0 || r > n) throw std::out_of_range("truncated_entropy: rank out of range");
  double s = 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = r; i < n; ++i) s += renyi_term(spec.lambdas()[i], inf);
  return s;
}

int counting_function(const GaussianSpectrum& spec, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("counting_function: mu in (0,1)");
  int c = 0;
  for (double l : spec.lambdas())
    if (std::abs(l) < mu) ++c;
  return c;
}

void skew_canonical(const Mat& s, Mat& basis, std::vector<double>& c) {
  const Eigen::Index d = s.rows();
  if (d % 2 != 0 || s.cols() != d) throw std::invalid_argument("skew_canonical: bad shape");
  const Eigen::Index m = d / 2;
  CMat h = Cplx(0, 1) * s.cast<Cplx>();
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  // Eigenvalues come sorted ascending: -c_m .. -c_1, c_1 .. c_m. An eigenpair
  // (c, v = x + i y) with c > 0 gives the real pair (sqrt2 y, sqrt2 x) and the
  // block c J in that basis.
  constexpr double kZeroTol = 1e-10;
  struct Pair {
    double c;
    Vec e1, e2;
  };
  std::vector<Pair> pairs;
  std::vector<Eigen::Index> zero_idx;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double ev = es.eigenvalues()[i];
    if (ev > kZeroTol) {
      const Eigen::VectorXcd v = es.eigenvectors().col(i);
      pairs.push_back({ev, std::sqrt(2.0) * v.imag(), std::sqrt(2.0) * v.real()});
    } else if (std::abs(ev) <= kZeroTol) {
      zero_idx.push_back(i);
    }
  }
  // Kernel: orthonormalize the real spans of the near-zero eigenvectors,
  // lexicographic seed order, and pair them up (blocks 0 J).
  std::vector<Vec> kernel;
  const Eigen::Index want = m - static_cast<Eigen::Index>(pairs.size());
  if (want > 0) {
    std::vector<Vec> cand;
    for (Eigen::Index i : zero_idx) {
      cand.push_back(es.eigenvectors().col(i).real());
      cand.push_back(es.eigenvectors().col(i).imag());
    }
    for (auto& v : cand) {
      Vec w = v;
      for (const auto& p : pairs) {
        w -= p.e1 * p.e1.dot(w);
        w -= p.e2 * p.e2.dot(w);
      }
      for (const auto& u : kernel) w -= u * u.dot(w);
      const double norm = w.norm();
      if (norm > 1e-7) kernel.push_back(w / norm);
      if (static_cast<Eigen::Index>(kernel.size()) == 2 * want) break;
    }
    for (size_t t = 0; t + 1 < kernel.size(); t += 2)
      pairs.push_back({0.0, kernel[t], kernel[t + 1]});
  }
  if (static_cast<Eigen::Index>(pairs.size()) != m)
    throw std::runtime_error("skew_canonical: canonical pairing failed");
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.c < b.c; });
  basis.resize(d, d);
  c.assign(m, 0.0);
  for (Eigen::Index j = 0; j < m; ++j) {
    basis.col(2 * j) = pairs[j].e1;
    basis.col(2 * j + 1) = pairs[j].e2;
    c[j] = pairs[j].c;
  }
}

namespace {

// Majorana rows of the listed modes, interleaved.
std::vector<int> majorana_rows(const std::vector<int>& modes) {
  std::vector<int> rows;
  rows.reserve(2 * modes.size());
  for (int m : modes) {
    rows.push_back(2 * m);
    rows.push_back(2 * m + 1);
  }
  return rows;
}

Mat gather(const Mat& g, const std::vector<int>& rows, const std::vector<int>& cols) {
  Mat out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out(i, j) = g(rows[i], cols[j]);
  return out;
}

} // namespace

GaussianSVDResult gaussian_svd(const MajoranaCovariance& g, const Bipartition& bip) {
  if (bip.total_modes() != g.modes())
    throw std::invalid_argument("gaussian_svd: bipartition does not match state");
  if (!g.is_pure())
    throw std::invalid_argument("gaussian_svd: state is not pure");

  const auto rows_a = majorana_rows(bip.left());
  const auto rows_b = majorana_rows(bip.right());
  const Mat gaa = gather(g.matrix(), rows_a, rows_a);
  const Mat gab = gather(g.matrix(), rows_a, rows_b);
  const Mat gbb = gather(g.matrix(), rows_b, rows_b);
  const int na = static_cast<int>(bip.left().size());
  const int nb = static_cast<int>(bip.right().size());
  const int np = std::min(na, nb);

  // A side: canonical form sorted by c ascending = theta descending.
  Mat oa;
  std::vector<double> cs;
  skew_canonical(gaa, oa, cs);
  if (static_cast<int>(cs.size()) != na)
    throw std::runtime_error("gaussian_svd: unexpected canonical rank");
  // Entangled pairs beyond min(na, nb) cannot exist for a pure state; their
  // c must be 1. Order guarantees cs ascending, so pairs [0, np) are the ones
  // that may entangle.
  GaussianSVDResult res;
  res.O = oa;
  res.left_modes = bip.left();
  res.right_modes = bip.right();
  res.thetas.assign(np, 0.0);

  // B side: columns from the coupled rows of M = O^T Gamma_AB where the pair
  // entangles; completion from the canonical form of the residual Gamma_BB.
  // Purity gives M M^T = diag(sin^2 theta_j), each value twice, so the row
  // norms measure sin(theta) with absolute machine accuracy; together with
  // the canonical cos(theta) they give theta = atan2(s, c), which stays
  // machine-accurate near theta = 0 where acos(c) would lose half the digits.
  const Mat m = oa.transpose() * gab;
  Mat q = Mat::Zero(2 * nb, 2 * nb);
  std::vector<bool> have(2 * nb, false);
  constexpr double kProductTol = 1e-12;
  std::vector<int> product_pairs;
  for (int j = 0; j < np; ++j) {
    const double s1 = m.row(2 * j).norm();
    const double s2 = m.row(2 * j + 1).norm();
    res.thetas[j] = std::atan2(0.5 * (s1 + s2), std::clamp(cs[j], 0.0, 1.0));
    if (std::min(s1, s2) > kProductTol) {
      q.col(2 * j) = m.row(2 * j).transpose() / s1;
      q.col(2 * j + 1) = m.row(2 * j + 1).transpose() / s2;
      have[2 * j] = have[2 * j + 1] = true;
    } else {
      product_pairs.push_back(j);
    }
  }
  // Re-orthonormalize the assembled columns (tiny correction; restores exact
  // unit norm for nearly-product pairs).
  for (int jcol = 0; jcol < 2 * nb; ++jcol) {
    if (!have[jcol]) continue;
    Vec v = q.col(jcol);
    for (int prev = 0; prev < jcol; ++prev)
      if (have[prev]) v -= q.col(prev) * q.col(prev).dot(v);
    const double norm = v.norm();
    if (norm < 0.5) throw std::runtime_error("gaussian_svd: ill-conditioned B basis");
    q.col(jcol) = v / norm;
  }

  // Completion slots: product pairs (block -cos(theta) J, columns swapped) and
  // lone B modes (block -J).
  std::vector<int> slots;
  for (int j : product_pairs) {
    slots.push_back(2 * j);
    slots.push_back(2 * j + 1);
  }
  for (int j = np; j < nb; ++j) {
    slots.push_back(2 * j);
    slots.push_back(2 * j + 1);
  }
  if (!slots.empty()) {
    // Orthonormal basis of the complement of the assembled columns.
    std::vector<Vec> comp;
    for (int seed = 0; seed < 2 * nb && static_cast<int>(comp.size()) < static_cast<int>(slots.size());
         ++seed) {
      Vec v = Vec::Unit(2 * nb, seed);
      for (int jcol = 0; jcol < 2 * nb; ++jcol)
        if (have[jcol]) v -= q.col(jcol) * q.col(jcol).dot(v);
      for (const auto& u : comp) v -= u * u.dot(v);
      const double norm = v.norm();
      if (norm > 1e-7) comp.push_back(v / norm);
    }
    if (comp.size() != slots.size())
      throw std::runtime_error("gaussian_svd: completion basis deficient");
    Mat p(2 * nb, comp.size());
    for (size_t t = 0; t < comp.size(); ++t) p.col(t) = comp[t];
    Mat pb;
    std::vector<double> cb;
    skew_canonical(Mat(p.transpose() * gbb * p), pb, cb);
    const Mat qcomp = p * pb;  // canonical blocks +c J, c ascending (all ~1)
    for (size_t t = 0; t + 1 < slots.size(); t += 2) {
      // Swap the pair to flip the block sign: -c J.
      q.col(slots[t]) = qcomp.col(t + 1);
      q.col(slots[t + 1]) = qcomp.col(t);
    }
  }
  res.Q = q;
  return res;
}

MajoranaCovariance GaussianSVDResult::reconstruct(std::optional<int> keep_pairs) const {
  const int na = static_cast<int>(left_modes.size());
  const int nb = static_cast<int>(right_modes.size());
  const int np = static_cast<int>(thetas.size());
  std::vector<double> th = thetas;
  if (keep_pairs) {
    if (*keep_pairs < 0) throw std::out_of_range("reconstruct: negative rank");
    for (int j = std::min(*keep_pairs, np); j < np; ++j) th[j] = 0.0;
  }
  // Normal form in the (A-majoranas, B-majoranas) layout.
  Mat n = Mat::Zero(2 * (na + nb), 2 * (na + nb));
  auto J = [](double coeff, Mat& block, int row, int col) {
    block(row, col + 1) = coeff;
    block(row + 1, col) = -coeff;
  };
  for (int j = 0; j < na; ++j) J(j < np ? std::cos(th[j]) : 1.0, n, 2 * j, 2 * j);
  for (int j = 0; j < nb; ++j) {
    const double c = j < np ? -std::cos(th[j]) : -1.0;
    J(c, n, 2 * na + 2 * j, 2 * na + 2 * j);
  }
  for (int j = 0; j < np; ++j) {
    const double s = std::sin(th[j]);
    n(2 * j, 2 * na + 2 * j) = s;
    n(2 * j + 1, 2 * na + 2 * j + 1) = s;
    n(2 * na + 2 * j, 2 * j) = -s;
    n(2 * na + 2 * j + 1, 2 * j + 1) = -s;
  }
  Mat oq = Mat::Zero(2 * (na + nb), 2 * (na + nb));
  oq.topLeftCorner(2 * na, 2 * na) = O;
  oq.bottomRightCorner(2 * nb, 2 * nb) = Q;
  const Mat local = oq * n * oq.transpose();
  // Scatter back to the global interleaved mode ordering.
  std::vector<int> rows;
  rows.reserve(2 * (na + nb));
  for (int mde : left_modes) {
    rows.push_back(2 * mde);
    rows.push_back(2 * mde + 1);
  }
  for (int mde : right_modes) {
    rows.push_back(2 * mde);
    rows.push_back(2 * mde + 1);
  }
  Mat g(2 * (na + nb), 2 * (na + nb));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows.size(); ++j) g(rows[i], rows[j]) = local(i, j);
  return MajoranaCovariance(std::move(g));
}

double asymptotic_spectral_sum(const std::function<double(double)>& f, double L) {
  if (!(L > 1.0)) throw std::invalid_argument("asymptotic_spectral_sum: L must exceed 1");
  const auto integrand = [&f](double lam) { return f(lam) / (1.0 - lam * lam); };
  double error = 0.0;
  double integral = 0.0;
  try {
    integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, -1.0, 1.0, 12, 1e-10, &error);
  } catch (const std::exception&) {
    throw std::domain_error("asymptotic_spectral_sum: divergent integral");
  }
  if (!std::isfinite(integral) || error > std::max(1e-8 * std::abs(integral), 1e-10))
    throw std::domain_error("asymptotic_spectral_sum: divergent integral");
  const double boundary = L * (f(-1.0) + f(1.0)) / 2.0;
  return boundary + 2.0 * std::log(L) / (kPi * kPi) * integral;
}

double f_mu(double mu, double lambda) {
  const double d = 2.0 - mu * mu - lambda * lambda;
  return (1.0 - lambda * lambda) * (mu * mu - lambda * lambda) / (d * d);
}

double f_mu_bound(double mu, double L) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("f_mu_bound: mu in (0,1)");
  const double w = 2.0 - mu * mu;
  const double coeff = std::atanh(1.0 / std::sqrt(w)) / std::pow(w, 1.5) - 1.0 / w;
  return 4.0 * std::log(L) / (kPi * kPi) * coeff;
}

} // namespace fflab
