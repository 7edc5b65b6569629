#pragma once

#include <vector>

namespace fflab {

/// Parameters of the c = 1 boundary-CFT predictions.
struct CftParams {
  double a = 1.0;    // UV cutoff length
  double eta = 1.3;  // proportionality constant in ell = eta N
};

/// Effective interval length ell = (N / (pi a)) sin(pi L / N).
double effective_length(int L, int N, double a = 1.0);

/// Level weights eps_n = floor(n/2) + 1/2 = 1/2, 1/2, 3/2, 3/2, ...
double cft_level(int n);

/// Predicted |lambda_n| = tanh((pi^2/2) eps_n / log ell) for the interval
/// (L, N). Throws std::domain_error if ell <= 1.
double cft_spectrum(int n, int L, int N, const CftParams& params = {});

/// Same prediction from a given effective length.
double cft_spectrum_at(int n, double ell);

/// Tail estimate S_inf^trunc[chi] ~ (2 log ell / pi^2) exp(-pi^2 chi / (2 log ell)).
double cft_truncated_entropy(double chi, double ell);

/// chi(N, eps) = (2/pi^2) log(eta N) log((pi^2 / 2 eps) log(eta N)).
double chi_required(double N, double eps, const CftParams& params = {});

/// D(N, eps) = (eta N)^{(log 2 / pi^2) log(2 N log(eta N) / (pi^2 eps))},
/// the bond-dimension estimate with the eps -> eps/N replacement baked in.
double bond_dim_required(double N, double eps, const CftParams& params = {});
double log_bond_dim_required(double N, double eps, const CftParams& params = {});

/// Least-squares refit of the UV cutoff a against exact doublet means
/// (|lambda| of doublets 0..n-1 at interval (L, N)). Returns the minimizing a.
double fit_uv_cutoff(int L, int N, const std::vector<double>& exact_doublet_means);

} // namespace fflab
