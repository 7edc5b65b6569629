#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace fflab {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using Cplx = std::complex<double>;

// Tolerances used by the validity checks below.
inline constexpr double kHermTol = 1e-12;  // relative, hermiticity / skew-symmetry
inline constexpr double kPhysTol = 1e-9;   // eigenvalue slack for 0 <= C <= 1
inline constexpr double kPurityTol = 1e-8; // ||Gamma Gamma^T - 1||_max for "pure" inputs

/// Hermitian matrix C_ij = <a_i^dag a_j> of n fermionic modes.
///
/// Physical states have 0 <= C <= 1 as an operator inequality. The constructor
/// checks hermiticity and the (cheap, necessary) diagonal-range condition;
/// the full spectral condition is verified by the operations that rely on it,
/// which diagonalize C anyway.
class CorrelationMatrix {
public:
  explicit CorrelationMatrix(CMat entries);

  const CMat& matrix() const { return m_; }
  Eigen::Index modes() const { return m_.rows(); }

  /// Largest |imaginary part| over all entries. Zero for time-reversal
  /// invariant states; used to pick the real-symmetric eigensolver path.
  double max_imag() const;

  /// Full spectral physicality check: all eigenvalues in [-tol, 1+tol].
  bool is_physical(double tol = kPhysTol) const;

private:
  CMat m_;
};

/// Real skew-symmetric Majorana covariance [Gamma]_{js,j's'} = (i/2)<[c_{j,s}, c_{j',s'}]>
/// with the anticommutator normalization {c, c'} = 2 delta.
///
/// Majorana ordering is interleaved: (c_{0,1}, c_{0,2}, c_{1,1}, c_{1,2}, ...),
/// i.e. mode m owns rows 2m and 2m+1. With c_{j,1} = a_j + a_j^dag and
/// c_{j,2} = i(a_j - a_j^dag), the single-mode vacuum covariance is
/// [[0, 1], [-1, 0]] = J; a filled mode is -J. These sign conventions are
/// pinned by tests.
class MajoranaCovariance {
public:
  explicit MajoranaCovariance(Mat entries);

  const Mat& matrix() const { return g_; }
  Eigen::Index modes() const { return g_.rows() / 2; }
  Eigen::Index majoranas() const { return g_.rows(); }

  /// Pure iff Gamma Gamma^T = 1 (equivalently Gamma^2 = -1).
  bool is_pure(double tol = kPurityTol) const;
  /// ||Gamma Gamma^T - 1||_max, the quantity bounded by is_pure().
  double purity_defect() const;

private:
  Mat g_;
};

/// Disjoint index sets covering all modes of a state.
class Bipartition {
public:
  Bipartition(std::vector<int> left_modes, std::vector<int> right_modes);

  /// Convenience: modes [0, n_left) vs [n_left, n_total).
  static Bipartition contiguous(int n_left, int n_total);

  const std::vector<int>& left() const { return left_; }
  const std::vector<int>& right() const { return right_; }
  int total_modes() const { return static_cast<int>(left_.size() + right_.size()); }

private:
  std::vector<int> left_;
  std::vector<int> right_;
};

} // namespace fflab
