#pragma once

#include "fflab/spectrum.hpp"
#include "fflab/types.hpp"

#include <span>

namespace fflab {

/// Schmidt coefficients s_j >= 0, descending, sum s_j^2 = 1 (to 1e-10).
class SchmidtSpectrum {
public:
  explicit SchmidtSpectrum(std::vector<double> values);
  const std::vector<double>& values() const { return s_; }
  int size() const { return static_cast<int>(s_.size()); }

private:
  std::vector<double> s_;
};

/// Squared overlap |<Gamma|gamma>|^2 = 2^{-N} sqrt(det(1 - Gamma gamma)) of
/// two Gaussian states of 2N Majoranas. Evaluated in the log domain through a
/// sign-tracking LU factorization, so it stays finite for thousands of modes.
/// A determinant that comes out negative beyond roundoff throws
/// std::runtime_error; tiny negatives clamp to 0.
double gaussian_overlap(const MajoranaCovariance& a, const MajoranaCovariance& b);

/// Eckart-Young-Mirsky overlap bound for rank-r truncation:
/// |<Psi|Psi~>|^2 <= 1 - sum_{j>r} s_j^2.
double schmidt_truncation_bound(const SchmidtSpectrum& spec, int r);

/// Gaussian-rank analogue: |<Psi|Psi~>|^2 <= prod over the n-r largest
/// |lambda| of (1+|lambda|)/2 = exp(-S_inf^trunc[r]).
double gaussian_rank_bound(const GaussianSpectrum& spec, int r);

/// Exact maximum over permutations of prod_i cos^2((theta_i - theta~_sigma(i))/2),
/// solved as a max-weight assignment on log cos^2 costs. Angles in [0, pi/2].
double spectra_overlap_bound(std::span<const double> thetas,
                             std::span<const double> thetas_tilde);

/// Maximum-weight perfect matching value of a square cost matrix (Hungarian
/// method, O(n^3)). Exposed for tests against brute-force enumeration.
double max_assignment(const Mat& weights);

/// Best Gaussian approximation of rank <= r across bip: Gaussian SVD of Gamma
/// with all but the r largest thetas set to zero. Its overlap with Gamma
/// attains gaussian_rank_bound.
MajoranaCovariance optimal_gaussian_truncation(const MajoranaCovariance& g,
                                               const Bipartition& bip, int r);

/// Scaling estimates (not sharp inequalities) for the truncation error at
/// Renyi index alpha in (0,1):
///   eps_G  ~ c S_alpha^{1/alpha} chi^{-(1-alpha)/alpha}
///   eps_NG ~ c S_alpha^{1/alpha} D^{-(1-alpha)/alpha}
/// The implicit constant c defaults to 1 and is exposed.
struct TradeoffBounds {
  double eps_gaussian;
  double eps_non_gaussian;
};
TradeoffBounds entropy_truncation_tradeoffs(double s_alpha, double alpha, double chi,
                                            double bond_dim, double constant = 1.0);

} // namespace fflab
