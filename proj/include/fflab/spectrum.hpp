#pragma once

#include "fflab/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace fflab {

/// Gaussian entanglement spectrum: eigenvalues of V_R = 2 C_R - 1, kept
/// sorted by |lambda| ascending (ties by signed value). lambda = 0 is a
/// maximally entangled pair, |lambda| = 1 a product mode.
class GaussianSpectrum {
public:
  explicit GaussianSpectrum(std::vector<double> lambdas);

  const std::vector<double>& lambdas() const { return l_; }
  int size() const { return static_cast<int>(l_.size()); }
  double abs_lambda(int i) const { return std::abs(l_[i]); }

private:
  std::vector<double> l_;
};

/// Eigenvalues of 2 C_R - 1. Uses the real-symmetric solver when the imaginary
/// parts of C_R are below 1e-13, the Hermitian solver otherwise. Validates
/// physicality of C_R as a side effect of the solve.
GaussianSpectrum gaussian_spectrum(const CorrelationMatrix& c_r);

/// Per-pair Renyi contribution
///   s_alpha(lambda) = log[((1+lambda)/2)^alpha + ((1-lambda)/2)^alpha]/(1-alpha),
/// with the alpha = 1 (von Neumann) limit evaluated as -p log p - q log q and
/// alpha = infinity as -log((1+|lambda|)/2).
double renyi_term(double lambda, double alpha);

/// S_alpha = sum_j s_alpha(lambda_j). Throws for alpha <= 0.
double renyi_entropy(const GaussianSpectrum& spec, double alpha);

/// Tail infinity-Renyi entropy S_inf^trunc[r] = sum over the n - r pairs of
/// largest |lambda| (i.e. the r most entangled pairs are discarded from the
/// sum, matching the truncation that keeps them in the approximation).
double truncated_entropy(const GaussianSpectrum& spec, int r);

/// Number of eigenvalues with |lambda| < mu, 0 < mu < 1.
int counting_function(const GaussianSpectrum& spec, double mu);

/// Gaussian singular value decomposition of a pure covariance across a
/// bipartition: Gamma = (O + Q) N(theta) (O + Q)^T where N(theta) pairs A-mode
/// j with B-mode j into a W(theta_j) block,
///   W(theta) = [[cos(theta) J, sin(theta) 1], [-sin(theta) 1, -cos(theta) J]],
/// thetas sorted descending (most entangled first), cos(theta_j) = |lambda_j|.
/// When the sides are unequal, the surplus modes of the larger side appear as
/// lone product blocks (+J on the A side, -J on the B side), consistent with
/// theta = 0 pairs.
struct GaussianSVDResult {
  Mat O;                       // 2 n_A x 2 n_A, basis for the left side
  Mat Q;                       // 2 n_B x 2 n_B
  std::vector<double> thetas;  // min(n_A, n_B) angles in [0, pi/2], descending
  std::vector<int> left_modes;
  std::vector<int> right_modes;

  /// Rebuilds the covariance in the original global mode ordering. If
  /// keep_pairs is given, thetas beyond that rank are replaced by 0 (product
  /// pairs), which is the optimal Gaussian truncation.
  MajoranaCovariance reconstruct(std::optional<int> keep_pairs = std::nullopt) const;
};

GaussianSVDResult gaussian_svd(const MajoranaCovariance& g, const Bipartition& bip);

/// Canonical form of a real skew-symmetric matrix: S = B (sum_j c_j J) B^T
/// with orthogonal B and c_j >= 0 sorted ascending. Exposed for tests.
void skew_canonical(const Mat& s, Mat& basis, std::vector<double>& c);

/// Two-term Toeplitz asymptotics of a spectral sum over the infinite-chain
/// interval spectrum: sum_i f(lambda_i) ~ L (f(-1)+f(1))/2
///   + (2 log L / pi^2) Int_{-1}^{1} f(lambda)/(1-lambda^2) d lambda.
/// The integral runs through adaptive Gauss-Kronrod quadrature at relative
/// tolerance 1e-10; a non-converging or non-finite integral throws
/// std::domain_error ("divergent integral").
double asymptotic_spectral_sum(const std::function<double(double)>& f, double L);

/// f_mu(lambda) = (1-lambda^2)(mu^2-lambda^2)/(2-mu^2-lambda^2)^2, the
/// holomorphic lower bound of the indicator Theta(mu - |lambda|).
double f_mu(double mu, double lambda);

/// Closed form of the asymptotic counting lower bound:
/// (4 log L/pi^2) [argtanh(1/sqrt(2-mu^2))/(2-mu^2)^{3/2} - 1/(2-mu^2)].
double f_mu_bound(double mu, double L);

} // namespace fflab
