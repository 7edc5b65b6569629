#pragma once

#include "fflab/hopping.hpp"
#include "fflab/types.hpp"

#include <complex>
#include <string>
#include <vector>

namespace fflab {

/// Fiducial covariance of a translation-invariant GfMPS site tensor:
/// Gamma = [[A, B], [-B^T, D]] with 2f physical and 2*chi_m virtual Majoranas
/// (chi_m per side; odd chi_m allowed on rings).
struct FiducialState {
  Mat A;  // 2f x 2f
  Mat B;  // 2f x 2chi_m
  Mat D;  // 2chi_m x 2chi_m
  int f = 1;
  int chi_m = 0;

  Mat assembled() const;
  bool is_pure(double tol = kPurityTol) const;
};

/// Momentum-space contraction: G(k) = A + B [D - K(k)]^{-1} B^T with
/// K(k) = [[0, e^{ik} 1], [-e^{-ik} 1, 0]] pairing the virtual rails.
/// G(k) is anti-Hermitian with G(-k) = conj(G(k)); pure fiducial states give
/// -G(k)^2 = 1 at every nonsingular k. A singular bracket throws
/// std::runtime_error carrying its reciprocal condition number.
CMat contract_momentum(const FiducialState& fid, double k);

/// Rail GfMPS: one (f+chi_m) x (f+chi_m) orthogonal matrix O, blocked as
/// [[O11, O12], [O21, O22]] with O11 f x f.
struct RailSpec {
  Mat O;
  int f = 1;
  int chi_m = 0;

  static RailSpec random(int chi_m, std::uint64_t seed);  // f = 1
  FiducialState fiducial() const;
};

/// Transfer function T(z) = O11 + O12 (z 1 - O22)^{-1} O21 of an f = 1 rail;
/// a finite Blaschke product, |T(z)| = 1 on |z| = 1. (The resolvent is written
/// with z 1 - O22: that is the variant under which |T| is unimodular and which
/// matches contract_momentum on the rail fiducial state.) Throws when
/// z is an eigenvalue of O22.
Cplx rail_transfer(const RailSpec& rail, Cplx z);

/// Blaschke data of a rail: poles alpha_j (eigenvalues of O22, inside the
/// unit disk for proper rails) and unimodular prefactor eta such that
/// T(z) = eta prod_j (1 - conj(alpha_j) z)/(z - alpha_j).
struct BlaschkeProduct {
  std::vector<Cplx> poles;
  Cplx eta{1.0, 0.0};

  Cplx eval(Cplx z) const;
};
BlaschkeProduct blaschke_from_rail(const RailSpec& rail);

/// Momentum-selection strategy for exact-momenta ladder construction.
enum class Strategy { all_near_fermi, log_spread, fourier, chebyshev };
Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);

/// Translation-invariant ladder GfMPS defined by two real odd monic
/// polynomials p, q of equal odd degree chi_m through
///   n_k = p(cos k/2)^2 / (p(cos k/2)^2 + q(sin k/2)^2).
/// Roots are the primary representation (p(x) = x prod_j (x^2 - x2_p[j]));
/// monomial coefficients expand on demand. Evaluation runs in the log domain,
/// so degrees in the hundreds stay finite.
struct LadderSpec {
  std::vector<double> x2_p;  // squared nonzero roots of p (momenta made exactly empty)
  std::vector<double> x2_q;  // squared nonzero roots of q (momenta made exactly filled)

  int chi_m() const { return 2 * static_cast<int>(x2_p.size()) + 1; }

  /// Monomial coefficients of p (resp. q), ascending degree, length chi_m+1.
  std::vector<double> p_coefficients() const;
  std::vector<double> q_coefficients() const;

  /// Coefficients of the equivalent parametrization
  /// n_k = (1+cos k) pi(cos k)^2 / [(1+cos k) pi(cos k)^2 + (1-cos k) th(cos k)^2]
  /// with monic pi, th of degree (chi_m-1)/2.
  std::vector<double> pi_coefficients() const;
  std::vector<double> theta_coefficients() const;
};

/// Half-angle phase phi_k = atan2(p(cos k/2), q(sin k/2)); n_k = sin^2 phi_k
/// and the momentum-space covariance phase is z_k = e^{2 i phi_k}. Throws
/// std::domain_error when p and q vanish simultaneously (degenerate ansatz).
double ladder_phase(const LadderSpec& spec, double k);
double ladder_occupation(const LadderSpec& spec, double k);
OccupationFunction ladder_occupation(const LadderSpec& spec, const MomentumGrid& grid);

/// Builds the ladder whose n_k is exact on chi_m grid momenta: the zeros of q
/// sit on selected filled momenta, the zeros of p on selected empty momenta
/// (k = 0 and k = pi are exact for free). The strategy picks which momenta,
/// by rank of distance from the Fermi points:
///   all_near_fermi: ranks 1..J          log_spread: ranks 1, 2, 4, 8, ...
///   fourier: uniformly spread ranks     chebyshev: Chebyshev-node ranks
/// capped at the grid edge, deduplicated, refilled with the smallest unused
/// ranks. J = (chi_m - 1)/2 per side. Throws when chi_m is even or the
/// selection exceeds the grid.
LadderSpec build_ladder_exact_momenta(int N, Strategy strategy, int chi_m);

/// Position-space correlation matrix (Toeplitz-circulant, symbol n_k).
CorrelationMatrix ladder_to_correlation(const LadderSpec& spec, int N);

/// Full position-space Majorana covariance of the ladder state on the ring:
/// inverse Fourier transform of the blocks [[0, z_k], [-conj(z_k), 0]].
MajoranaCovariance ladder_to_covariance(const LadderSpec& spec, int N);

/// delta = flat-band energy error of the ladder occupation on ring N.
double ladder_energy_error(const LadderSpec& spec, int N);

/// Fidelity error 1 - |<ladder|ground state>|^2, evaluated momentum by
/// momentum: |<.|.>|^2 = prod_{k filled} sqrt(n_k) prod_{k empty} sqrt(1-n_k).
double ladder_infidelity(const LadderSpec& spec, int N);

/// One row of the bond-dimension experiment.
struct ScanRecord {
  int N = 0;
  int chi_majorana = 0;
  double bond_dim = 0.0;  // 2^{ceil(chi_m/2)}
  double delta = 0.0;
  double epsilon = 0.0;
  Strategy strategy = Strategy::log_spread;
  double wall_time_ms = 0.0;
  bool saturated = false;  // delta target unreachable within the grid
};

/// Minimal odd chi_m with delta <= delta_target for each N, found by
/// exponential bracketing plus binary search over the strategy's ladder.
/// delta is checked to be monotone along the probes; the result is verified
/// minimal (delta at chi_m - 2 exceeds the target). Unreachable targets are
/// returned with saturated = true at the largest admissible chi_m.
std::vector<ScanRecord> bond_dimension_scan(const std::vector<int>& Ns, double delta_target,
                                            Strategy strategy,
                                            Execution ex = Execution::parallel);

/// Least-squares fits of log D(N) against the scan records: the heuristic
/// scaling form (one parameter, eta), a pure power law and a pure exponential
/// (two parameters each). Residuals are sums of squares in log D.
struct ScalingFit {
  double eta = 0.0;
  double sse_scaling = 0.0;
  double sse_power = 0.0;
  double sse_exponential = 0.0;
};
ScalingFit fit_bond_dim_scaling(const std::vector<ScanRecord>& records, double eps);

} // namespace fflab
