#pragma once

#include "fflab/types.hpp"

#include <vector>

namespace fflab {

/// Ring of N sites (N even) with nu = ceil((log N)^{1+beta}) entangled pairs
/// of strength lambda = 1 - 2/nu placed between sites i and i + N/2,
/// i = 0..nu-1. Logs are natural.
struct ToySpec {
  int N = 0;
  double beta = 1.0;

  ToySpec(int N, double beta);

  int nu() const { return nu_; }
  double lambda() const { return lambda_; }

  /// Correlation matrix of the toy state (a Slater determinant with orbitals
  /// sqrt((1+lambda)/2) e_i + sqrt((1-lambda)/2) e_{i+N/2}).
  CorrelationMatrix correlation() const;

private:
  int nu_ = 0;
  double lambda_ = 0.0;
};

enum class ToyCut { half_ring, interval };

/// Pairs crossing the cut [first, first+length) on the ring.
int toy_pairs_crossing(const ToySpec& spec, int first, int length);

/// S_alpha across the cut: (crossing pairs) * s_alpha(lambda). The half-ring
/// cut [0, N/2) crosses all nu pairs.
double toy_entropy(const ToySpec& spec, double alpha, ToyCut cut, int first = 0,
                   int length = 0);

/// GfMPS error bound |<psi|psi~>| <= ((1+lambda)/2)^{nu - chi} for Gaussian
/// rank chi. It bounds the overlap itself, while gaussian_rank_bound of the
/// nu-fold spectrum {lambda, ..., lambda} at rank chi bounds the squared
/// overlap -- numerically the two expressions coincide (the same product over
/// discarded pairs); both are exposed side by side. chi >= nu returns 1
/// (exact representation).
double toy_gfmps_overlap_bound(const ToySpec& spec, int chi);
double toy_gfmps_overlap_bound_squared(const ToySpec& spec, int chi);

/// Minimal Gaussian rank chi with toy_gfmps_overlap_bound >= 1 - eps.
int toy_min_gaussian_chi(const ToySpec& spec, double eps);

/// Schmidt side of the separation: the half-ring Schmidt spectrum is the
/// nu-fold product of the pair spectrum {sqrt((1+lambda)/2), sqrt((1-lambda)/2)},
/// binomially weighted. Returns the minimal rank whose truncation error
/// 1 - (kept mass) is <= eps, i.e. sum_{j<=t} C(nu,j) for the smallest
/// admissible tail cutoff t.
double toy_schmidt_rank_for_error(const ToySpec& spec, double eps);

/// One row of the fMPS/GfMPS separation table.
struct ToyRecord {
  int N = 0;
  int nu = 0;
  double lambda = 0.0;
  double alpha_window_lo = 0.0;  // entropy O(log N) for alpha in (lo, 1)
  double entropy_half_ring = 0.0;
  int chi_min = 0;               // Gaussian rank needed for overlap >= 1-eps
  double log2_bond_dim = 0.0;    // chi_min (complex-pair convention, D = 2^chi)
  double schmidt_rank = 0.0;     // fMPS side, same error target
};

struct ToyReport {
  std::vector<ToyRecord> rows;
  bool superpolynomial = false;  // log D / log N increasing along rows
  bool subexponential = false;   // log D / N decreasing along rows
};

ToyReport toy_separation_report(double beta, double eps, const std::vector<int>& Ns,
                                double alpha = 0.5);

} // namespace fflab
