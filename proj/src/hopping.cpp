#include "fflab/hopping.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fflab {

namespace {
constexpr double kPi = std::numbers::pi;

CorrelationMatrix toeplitz_from_symbol(const std::vector<Cplx>& c, int L) {
  CMat m(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      const int r = j - i;
      m(i, j) = r >= 0 ? c[r] : std::conj(c[-r]);
    }
  return CorrelationMatrix(std::move(m));
}
} // namespace

MomentumGrid MomentumGrid::ring(int N) {
  if (N < 2) throw std::invalid_argument("MomentumGrid: N must be >= 2");
  MomentumGrid g;
  g.N = N;
  const int lo = -(N - 1) / 2;        // smallest n with k > -pi
  const int hi = N / 2;               // k = pi included for even N
  for (int n = lo; n <= hi; ++n) {
    g.indices.push_back(n);
    g.momenta.push_back(2.0 * kPi * n / N);
  }
  return g;
}

bool is_filled(int momentum_index, int N) {
  const long abs4 = 4L * std::abs(momentum_index);
  if (abs4 < N) return true;                  // |k| < pi/2
  if (abs4 == N) return momentum_index < 0;   // zero mode: fill k = -pi/2 only
  return false;
}

OccupationFunction exact_occupation(const MomentumGrid& grid) {
  OccupationFunction occ;
  occ.values.reserve(grid.indices.size());
  for (int n : grid.indices) occ.values.push_back(is_filled(n, grid.N) ? 1.0 : 0.0);
  return occ;
}

CorrelationMatrix correlation_finite(int L, int N, Execution ex) {
  if (L < 1 || L > N) throw std::invalid_argument("correlation_finite: need 1 <= L <= N");
  return toeplitz_from_symbol(hopping_symbol(N, L, ex), L);
}

CorrelationMatrix correlation_infinite(int L) {
  const auto sym = infinite_symbol(L);
  std::vector<Cplx> c(sym.begin(), sym.end());
  return toeplitz_from_symbol(c, L);
}

CorrelationMatrix correlation_from_occupation(const OccupationFunction& occ,
                                              const MomentumGrid& grid, int L) {
  if (occ.values.size() != grid.indices.size())
    throw std::invalid_argument("correlation_from_occupation: occupation/grid mismatch");
  if (L < 1 || L > grid.N) throw std::invalid_argument("correlation_from_occupation: bad L");
  std::vector<Cplx> c(L, Cplx(0, 0));
  for (int r = 0; r < L; ++r) {
    double re = 0.0, im = 0.0;
    for (size_t t = 0; t < occ.values.size(); ++t) {
      const double kr = grid.momenta[t] * r;
      re += occ.values[t] * std::cos(kr);
      im += occ.values[t] * std::sin(kr);
    }
    c[r] = Cplx(re / grid.N, im / grid.N);
  }
  return toeplitz_from_symbol(c, L);
}

double flat_band_energy_error(const OccupationFunction& occ, const MomentumGrid& grid) {
  if (occ.values.size() != grid.indices.size())
    throw std::invalid_argument("flat_band_energy_error: occupation/grid mismatch");
  double delta = 0.0;
  for (size_t t = 0; t < occ.values.size(); ++t) {
    const double n_k = occ.values[t];
    delta += is_filled(grid.indices[t], grid.N) ? (1.0 - n_k) : n_k;
  }
  return delta;
}

double trace_norm_distance(int L, int N) {
  if (L < 1 || L > N) throw std::invalid_argument("trace_norm_distance: need 1 <= L <= N");
  const auto fin = hopping_symbol(N, L);
  const auto inf = infinite_symbol(L);
  CMat d(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      const int r = j - i;
      const Cplx cf = r >= 0 ? fin[r] : std::conj(fin[-r]);
      const double ci = inf[std::abs(r)];
      d(i, j) = cf - ci;
    }
  Eigen::SelfAdjointEigenSolver<CMat> es(d, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

void trace_norm_series_coefficients(int m, int count, std::vector<double>& a, std::vector<double>& b) {
  // Power series in u = z^2:  sin(c z) = z sum_n (-1)^n c^{2n+1} u^n / (2n+1)!
  //                           cos(c z) =   sum_n (-1)^n c^{2n}   u^n / (2n)!
  // a: division of the sin(m pi z/2) series by the sin(pi z) series.
  // b: division of the cos series, with the 1/(pi z) pole subtracted (the
  //    constant term of the quotient is exactly 1/pi).
  const int M = count + 2;
  const long double c = m * std::numbers::pi_v<long double> / 2.0L;
  const long double pi = std::numbers::pi_v<long double>;
  std::vector<long double> q(M), ps(M), pc(M);
  long double fact = 1.0L;  // (2n+1)! running
  long double fact2 = 1.0L; // (2n)! running
  long double cp_odd = c, cp_even = 1.0L, pip = pi;
  for (int n = 0; n < M; ++n) {
    const long double sgn = (n % 2 == 0) ? 1.0L : -1.0L;
    q[n] = sgn * pip / fact;
    ps[n] = sgn * cp_odd / fact;
    pc[n] = sgn * cp_even / fact2;
    fact *= (2 * n + 2) * (2 * n + 3);
    fact2 *= (2 * n + 1) * (2 * n + 2);
    cp_odd *= c * c;
    cp_even *= c * c;
    pip *= pi * pi;
  }
  std::vector<long double> qa(M), qd(M);
  for (int n = 0; n < M; ++n) {
    long double acc = ps[n], acc2 = pc[n];
    for (int i = 0; i < n; ++i) {
      acc -= qa[i] * q[n - i];
      acc2 -= qd[i] * q[n - i];
    }
    qa[n] = acc / q[0];
    qd[n] = acc2 / q[0];
  }
  a.assign(count, 0.0);
  b.assign(count, 0.0);
  for (int j = 0; j < count; ++j) {
    a[j] = static_cast<double>(qa[j]);
    b[j] = static_cast<double>(qd[j + 1]);  // constant term 1/pi cancels the pole
  }
}

double trace_norm_series_bound(int L, int N, int terms) {
  if (L < 1 || N < 2 || terms < 1) throw std::invalid_argument("trace_norm_series_bound: bad args");
  const double phi = static_cast<double>(L) / N;
  if (phi >= 1.0) throw std::domain_error("trace_norm_series_bound: series diverges for L/N >= 1");
  const int m = MomentumGrid::ring(N).m_param();
  std::vector<double> a, b;
  trace_norm_series_coefficients(m, terms, a, b);
  double bound = 0.0;
  for (int j = 0; j < terms; ++j)
    bound += std::abs(a[j]) * std::pow(phi, 2 * j + 1) + std::abs(b[j]) * std::pow(phi, 2 * j + 2);
  bound *= 2.0;

  // Cauchy-estimate tail: |a_j|, |b_j| <= M(rho)/rho^{2j(+1)} for any rho < 1,
  // with M(rho) the maximum of the quotient functions on |z| = rho. Sampled
  // maximum with a margin factor of 2.
  const double rho = std::min(0.5 * (1.0 + phi), 0.98);
  if (phi < rho) {
    double mmax = 0.0;
    const int samples = 720;
    const double mt = m * std::numbers::pi / 2.0;
    for (int t = 0; t < samples; ++t) {
      const Cplx z = std::polar(rho, 2.0 * std::numbers::pi * t / samples);
      const Cplx sz = std::sin(std::numbers::pi * z);
      const double fa = std::abs(std::sin(mt * z) / sz);
      const double fb = std::abs(std::cos(mt * z) / sz - 1.0 / (std::numbers::pi * z));
      mmax = std::max({mmax, fa, fb});
    }
    mmax *= 2.0;
    const double x = phi / rho;
    const double tail_a = mmax * std::pow(x, 2 * terms) * phi / (1.0 - x * x);
    const double tail_b = mmax * std::pow(x, 2 * terms + 1) * phi / (1.0 - x * x);
    bound += 2.0 * (tail_a + tail_b);
  }

  // The N = 0 mod 4 convention fills only k = -pi/2; relative to the
  // symmetric (both zero modes filled) sea behind the m = 2 expansion this is
  // a rank-one Toeplitz correction of trace norm exactly L/N.
  if (N % 4 == 0) bound += phi;
  return bound;
}

} // namespace fflab
