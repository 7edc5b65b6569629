#include "fflab/toy.hpp"

#include "fflab/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace fflab {

ToySpec::ToySpec(int N, double beta) : N(N), beta(beta) {
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("ToySpec: N must be even and >= 2");
  if (!(beta > 0.0)) throw std::invalid_argument("ToySpec: beta must be positive");
  nu_ = static_cast<int>(std::ceil(std::pow(std::log(static_cast<double>(N)), 1.0 + beta)));
  nu_ = std::max(nu_, 1);
  if (nu_ > N / 2) throw std::invalid_argument("ToySpec: nu exceeds N/2, increase N");
  lambda_ = 1.0 - 2.0 / nu_;
}

CorrelationMatrix ToySpec::correlation() const {
  const double p = (1.0 + lambda_) / 2.0;
  CMat c = CMat::Zero(N, N);
  const double sp = std::sqrt(p), sq = std::sqrt(1.0 - p);
  for (int i = 0; i < nu_; ++i) {
    const int j = i + N / 2;
    c(i, i) = p;
    c(j, j) = 1.0 - p;
    c(i, j) = sp * sq;
    c(j, i) = sp * sq;
  }
  return CorrelationMatrix(std::move(c));
}

int toy_pairs_crossing(const ToySpec& spec, int first, int length) {
  if (length < 0 || length > spec.N)
    throw std::invalid_argument("toy_pairs_crossing: bad interval");
  const auto inside = [&](int site) {
    const int rel = ((site - first) % spec.N + spec.N) % spec.N;
    return rel < length;
  };
  int count = 0;
  for (int i = 0; i < spec.nu(); ++i)
    if (inside(i) != inside(i + spec.N / 2)) ++count;
  return count;
}

double toy_entropy(const ToySpec& spec, double alpha, ToyCut cut, int first, int length) {
  const int crossing =
      cut == ToyCut::half_ring ? spec.nu() : toy_pairs_crossing(spec, first, length);
  return crossing * renyi_term(spec.lambda(), alpha);
}

double toy_gfmps_overlap_bound(const ToySpec& spec, int chi) {
  if (chi < 0) throw std::out_of_range("toy_gfmps_overlap_bound: chi must be >= 0");
  if (chi >= spec.nu()) return 1.0;  // exact representation
  return std::pow((1.0 + spec.lambda()) / 2.0, spec.nu() - chi);
}

double toy_gfmps_overlap_bound_squared(const ToySpec& spec, int chi) {
  const double b = toy_gfmps_overlap_bound(spec, chi);
  return b * b;
}

int toy_min_gaussian_chi(const ToySpec& spec, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("toy_min_gaussian_chi: eps in (0,1)");
  const double base = (1.0 + spec.lambda()) / 2.0;  // = 1 - 1/nu
  const double allowance = std::log1p(-eps) / std::log(base);
  const int chi = static_cast<int>(std::ceil(spec.nu() - allowance - 1e-12));
  return std::clamp(chi, 0, spec.nu());
}

double toy_schmidt_rank_for_error(const ToySpec& spec, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("toy_schmidt_rank_for_error: eps in (0,1)");
  const int nu = spec.nu();
  const double q = (1.0 - spec.lambda()) / 2.0;  // per-pair weak weight = 1/nu
  // Binomial mass of patterns with j weak factors: C(nu, j) q^j (1-q)^{nu-j}.
  // Keep all patterns with j <= t for the smallest t whose tail is <= eps.
  std::vector<double> logmass(nu + 1);
  for (int j = 0; j <= nu; ++j) {
    logmass[j] = std::lgamma(nu + 1.0) - std::lgamma(j + 1.0) - std::lgamma(nu - j + 1.0) +
                 j * std::log(q) + (nu - j) * std::log1p(-q);
  }
  double kept = 0.0;
  double rank = 0.0;
  for (int t = 0; t <= nu; ++t) {
    kept += std::exp(logmass[t]);
    rank += std::round(
        std::exp(std::lgamma(nu + 1.0) - std::lgamma(t + 1.0) - std::lgamma(nu - t + 1.0)));
    if (1.0 - kept <= eps) return rank;
  }
  return rank;
}

ToyReport toy_separation_report(double beta, double eps, const std::vector<int>& Ns,
                                double alpha) {
  ToyReport rep;
  for (int N : Ns) {
    ToySpec spec(N, beta);
    ToyRecord row;
    row.N = N;
    row.nu = spec.nu();
    row.lambda = spec.lambda();
    row.alpha_window_lo = beta / (1.0 + beta);
    row.entropy_half_ring = toy_entropy(spec, alpha, ToyCut::half_ring);
    row.chi_min = toy_min_gaussian_chi(spec, eps);
    row.log2_bond_dim = row.chi_min;  // D = 2^chi, complex-pair convention
    row.schmidt_rank = toy_schmidt_rank_for_error(spec, eps);
    rep.rows.push_back(row);
  }
  rep.superpolynomial = rep.rows.size() >= 2;
  rep.subexponential = rep.rows.size() >= 2;
  for (size_t i = 1; i < rep.rows.size(); ++i) {
    const auto& a = rep.rows[i - 1];
    const auto& b = rep.rows[i];
    const double ra = a.log2_bond_dim / std::log2(static_cast<double>(a.N));
    const double rb = b.log2_bond_dim / std::log2(static_cast<double>(b.N));
    if (rb <= ra) rep.superpolynomial = false;
    if (b.log2_bond_dim / b.N >= a.log2_bond_dim / a.N) rep.subexponential = false;
  }
  return rep;
}

} // namespace fflab
