#include "fflab/gaussian.hpp"

#include "fflab/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <numeric>

namespace fflab {

namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

} // namespace

CorrelationMatrix::CorrelationMatrix(CMat entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("correlation matrix must be square");
  const double scale = std::max(1.0, max_abs(m_));
  const double herm = max_abs(CMat(m_ - m_.adjoint()));
  if (herm > kHermTol * scale)
    throw std::invalid_argument("correlation matrix is not Hermitian");
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    const double d = m_(i, i).real();
    if (d < -kPhysTol || d > 1.0 + kPhysTol)
      throw std::invalid_argument("correlation matrix diagonal outside [0, 1]");
  }
}

double CorrelationMatrix::max_imag() const {
  return m_.size() ? m_.imag().cwiseAbs().maxCoeff() : 0.0;
}

bool CorrelationMatrix::is_physical(double tol) const {
  Eigen::SelfAdjointEigenSolver<CMat> es(m_, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return ev.minCoeff() >= -tol && ev.maxCoeff() <= 1.0 + tol;
}

MajoranaCovariance::MajoranaCovariance(Mat entries) : g_(std::move(entries)) {
  if (g_.rows() != g_.cols() || g_.rows() % 2 != 0)
    throw std::invalid_argument("covariance must be square of even dimension");
  const double scale = std::max(1.0, max_abs(g_));
  if (max_abs(Mat(g_ + g_.transpose())) > kHermTol * scale)
    throw std::invalid_argument("covariance is not skew-symmetric");
  if (max_abs(g_) > 1.0 + kPhysTol)
    throw std::invalid_argument("covariance entries exceed 1");
}

double MajoranaCovariance::purity_defect() const {
  Mat gg = g_ * g_.transpose();
  gg.diagonal().array() -= 1.0;
  return max_abs(gg);
}

bool MajoranaCovariance::is_pure(double tol) const { return purity_defect() < tol; }

Bipartition::Bipartition(std::vector<int> left_modes, std::vector<int> right_modes)
    : left_(std::move(left_modes)), right_(std::move(right_modes)) {
  std::sort(left_.begin(), left_.end());
  std::sort(right_.begin(), right_.end());
  std::vector<int> all;
  all.reserve(left_.size() + right_.size());
  all.insert(all.end(), left_.begin(), left_.end());
  all.insert(all.end(), right_.begin(), right_.end());
  std::sort(all.begin(), all.end());
  for (size_t i = 0; i < all.size(); ++i) {
    if (all[i] != static_cast<int>(i))
      throw std::invalid_argument("bipartition must cover modes 0..n-1 exactly once");
  }
}

Bipartition Bipartition::contiguous(int n_left, int n_total) {
  std::vector<int> l(n_left), r(n_total - n_left);
  std::iota(l.begin(), l.end(), 0);
  std::iota(r.begin(), r.end(), n_left);
  return Bipartition(std::move(l), std::move(r));
}

MajoranaCovariance to_majorana(const CorrelationMatrix& c) {
  if (!c.is_physical())
    throw std::invalid_argument("to_majorana: correlation matrix is unphysical");
  const Eigen::Index n = c.modes();
  const CMat& C = c.matrix();
  Mat g = Mat::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = C(i, j).real();
      const double im = C(i, j).imag();
      const double d = (i == j) ? 1.0 : 0.0;
      g(2 * i, 2 * j) = -2.0 * im;
      g(2 * i, 2 * j + 1) = d - 2.0 * re;
      g(2 * i + 1, 2 * j) = 2.0 * re - d;
      g(2 * i + 1, 2 * j + 1) = -2.0 * im;
    }
  }
  return MajoranaCovariance(std::move(g));
}

CMat pairing_block(const MajoranaCovariance& g) {
  const Eigen::Index n = g.modes();
  const Mat& G = g.matrix();
  CMat f(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double g11 = G(2 * i, 2 * j);
      const double g12 = G(2 * i, 2 * j + 1);
      const double g21 = G(2 * i + 1, 2 * j);
      const double g22 = G(2 * i + 1, 2 * j + 1);
      const double re = -(g12 + g21) / 4.0;
      const double im = (g22 - g11) / 4.0;
      f(i, j) = Cplx(re, im);
    }
  }
  return f;
}

CorrelationMatrix to_correlation(const MajoranaCovariance& g, double tol) {
  const Eigen::Index n = g.modes();
  const CMat f = pairing_block(g);
  const double fmax = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
  if (fmax > tol)
    throw std::invalid_argument("to_correlation: not number-conserving (pairing block "
                                "norm " + std::to_string(fmax) + ")");
  const Mat& G = g.matrix();
  CMat c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = (i == j) ? 1.0 : 0.0;
      const double g11 = G(2 * i, 2 * j);
      const double g12 = G(2 * i, 2 * j + 1);
      const double g21 = G(2 * i + 1, 2 * j);
      const double g22 = G(2 * i + 1, 2 * j + 1);
      const double re = (2.0 * d - g12 + g21) / 4.0;
      const double im = -(g11 + g22) / 4.0;
      c(i, j) = Cplx(re, im);
    }
  }
  return CorrelationMatrix(std::move(c));
}

Mat random_orthogonal(int n, std::uint64_t seed) {
  Rng rng(seed);
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

CMat random_unitary(int n, std::uint64_t seed) {
  Rng rng(seed);
  CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Cplx(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<CMat> qr(a);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

MajoranaCovariance random_pure_gaussian(int n, std::uint64_t seed, bool number_conserving) {
  if (n < 1) throw std::invalid_argument("random_pure_gaussian: n must be >= 1");
  if (number_conserving) {
    // Random Slater determinant at filling floor(n/2): C = u P u^dag. The
    // unitary subgroup alone fixes the vacuum, so the filling flip supplies
    // the randomizable part of the orbit.
    const int m = n / 2;
    const CMat u = random_unitary(n, seed);
    CMat c = u.leftCols(m) * u.leftCols(m).adjoint();
    return to_majorana(CorrelationMatrix(std::move(c)));
  }
  Mat g0 = Mat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    g0(2 * j, 2 * j + 1) = 1.0;
    g0(2 * j + 1, 2 * j) = -1.0;
  }
  Mat r = random_orthogonal(2 * n, seed);
  // Proper rotations only: keeps every sample in the even-parity sector, so
  // overlaps between independent samples are generically nonzero.
  if (r.determinant() < 0) r.col(0) = -r.col(0);
  Mat g = r * g0 * r.transpose();
  g = 0.5 * (g - g.transpose().eval());  // re-skew against roundoff
  return MajoranaCovariance(std::move(g));
}

CorrelationMatrix restrict_modes(const CorrelationMatrix& c, std::span<const int> region) {
  const Eigen::Index n = c.modes();
  CMat sub(region.size(), region.size());
  for (size_t a = 0; a < region.size(); ++a) {
    for (size_t b = 0; b < region.size(); ++b) {
      const int i = region[a], j = region[b];
      if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::out_of_range("restrict_modes: index outside mode range");
      sub(a, b) = c.matrix()(i, j);
    }
  }
  return CorrelationMatrix(std::move(sub));
}

MajoranaCovariance restrict_majorana(const MajoranaCovariance& g, std::span<const int> region) {
  const Eigen::Index n = g.modes();
  Mat sub(2 * region.size(), 2 * region.size());
  for (size_t a = 0; a < region.size(); ++a) {
    for (size_t b = 0; b < region.size(); ++b) {
      const int i = region[a], j = region[b];
      if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::out_of_range("restrict_majorana: index outside mode range");
      sub.block(2 * a, 2 * b, 2, 2) = g.matrix().block(2 * i, 2 * j, 2, 2);
    }
  }
  return MajoranaCovariance(std::move(sub));
}

} // namespace fflab
