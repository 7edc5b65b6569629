#include "fflab/cft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fflab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
} // namespace

double effective_length(int L, int N, double a) {
  if (L < 1 || L > N) throw std::invalid_argument("effective_length: need 1 <= L <= N");
  if (!(a > 0.0)) throw std::invalid_argument("effective_length: cutoff must be positive");
  return N / (kPi * a) * std::sin(kPi * L / N);
}

double cft_level(int n) {
  if (n < 0) throw std::invalid_argument("cft_level: n must be >= 0");
  return n / 2 + 0.5;
}

double cft_spectrum_at(int n, double ell) {
  if (!(ell > 1.0)) throw std::domain_error("cft_spectrum: effective length must exceed 1");
  return std::tanh(kPi2 / 2.0 * cft_level(n) / std::log(ell));
}

double cft_spectrum(int n, int L, int N, const CftParams& params) {
  return cft_spectrum_at(n, effective_length(L, N, params.a));
}

double cft_truncated_entropy(double chi, double ell) {
  if (chi < 0.0) throw std::invalid_argument("cft_truncated_entropy: chi must be >= 0");
  if (!(ell > 1.0)) throw std::domain_error("cft_truncated_entropy: ell must exceed 1");
  const double logell = std::log(ell);
  return 2.0 * logell / kPi2 * std::exp(-kPi2 * chi / (2.0 * logell));
}

double chi_required(double N, double eps, const CftParams& params) {
  if (!(N >= 2.0) || !(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("chi_required: need N >= 2 and eps in (0,1)");
  const double logl = std::log(params.eta * N);
  return 2.0 / kPi2 * logl * std::log(kPi2 / (2.0 * eps) * logl);
}

double log_bond_dim_required(double N, double eps, const CftParams& params) {
  if (!(N >= 2.0) || !(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("bond_dim_required: need N >= 2 and eps in (0,1)");
  const double logl = std::log(params.eta * N);
  return std::numbers::ln2 / kPi2 * std::log(2.0 * N * logl / (kPi2 * eps)) * logl;
}

double bond_dim_required(double N, double eps, const CftParams& params) {
  return std::exp(log_bond_dim_required(N, eps, params));
}

double fit_uv_cutoff(int L, int N, const std::vector<double>& exact_doublet_means) {
  // Golden-section search on log a, least squares over the given doublets.
  const auto sse = [&](double a) {
    double s = 0.0;
    const double ell = effective_length(L, N, a);
    if (ell <= 1.0) return 1e100;
    for (size_t d = 0; d < exact_doublet_means.size(); ++d) {
      const double diff = exact_doublet_means[d] - cft_spectrum_at(static_cast<int>(2 * d), ell);
      s += diff * diff;
    }
    return s;
  };
  double lo = std::log(1e-4), hi = std::log(1e2);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = sse(std::exp(x1)), f2 = sse(std::exp(x2));
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = sse(std::exp(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = sse(std::exp(x2));
    }
  }
  return std::exp(0.5 * (lo + hi));
}

} // namespace fflab
