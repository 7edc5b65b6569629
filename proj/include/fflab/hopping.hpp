#pragma once

#include "fflab/kernels.hpp"
#include "fflab/types.hpp"

#include <array>
#include <vector>

namespace fflab {

/// Allowed momenta k in (2pi/N) Z intersected with (-pi, pi] for a ring of N
/// sites, stored ascending together with their integer indices.
struct MomentumGrid {
  int N = 0;
  std::vector<int> indices;     // n with k = 2 pi n / N, n in (-N/2, N/2]
  std::vector<double> momenta;  // ascending

  static MomentumGrid ring(int N);

  /// m = 2, 1, 0, -1 for N = 0, 1, 2, 3 (mod 4).
  int m_param() const { return std::array<int, 4>{2, 1, 0, -1}[N % 4]; }
};

/// Momentum occupations n_k in [0, 1], aligned with MomentumGrid::momenta.
struct OccupationFunction {
  std::vector<double> values;
};

/// Classification of a grid point against the Fermi surface at k_F = pi/2.
/// Exact integer arithmetic: |n| < N/4 is filled, |n| > N/4 empty. When N is
/// a multiple of 4 the zero modes at |k| = pi/2 follow the pinned convention:
/// k = -pi/2 filled, k = +pi/2 empty.
bool is_filled(int momentum_index, int N);

/// Ground-state occupation of the hopping chain: n_k = Theta(k_F - |k|) with
/// the zero-mode convention above.
OccupationFunction exact_occupation(const MomentumGrid& grid);

/// Correlation matrix of an interval of L sites in a ring of N, computed as
/// the exact momentum sum C_{i,i+r} = (1/N) sum_k n_k e^{ikr}.
CorrelationMatrix correlation_finite(int L, int N, Execution ex = Execution::parallel);

/// Correlation matrix of an interval of L sites in the infinite chain:
/// entries sin(pi r/2)/(pi r), diagonal 1/2.
CorrelationMatrix correlation_infinite(int L);

/// Toeplitz correlation matrix with prescribed occupations on the ring grid.
CorrelationMatrix correlation_from_occupation(const OccupationFunction& occ,
                                              const MomentumGrid& grid, int L);

/// Flat-band energy error delta = sum_{k filled}(1 - n_k) + sum_{k empty} n_k,
/// where filled/empty refers to the exact ground-state occupation. Vanishes
/// iff occ is the exact occupation; upper-bounds the fidelity error.
double flat_band_energy_error(const OccupationFunction& occ, const MomentumGrid& grid);

/// Schatten-1 norm of C_{L,N} - C_{L,infinity} via the eigenvalues of the
/// Hermitian difference.
double trace_norm_distance(int L, int N);

/// Taylor coefficients a_j of sin(m pi z/2)/sin(pi z) = sum_j a_j z^{2j} and
/// b_j of cos(m pi z/2)/sin(pi z) - 1/(pi z) = sum_j b_j z^{2j+1}, computed by
/// exact power-series division (no numerical differentiation). The argument
/// m pi z/2 comes from expanding the exact finite-ring symbol
/// (1/N) sin(pi r/2 + m pi r/(2N))/sin(pi r/N) around z = r/N; tests pin the
/// quotients against the momentum sum.
void trace_norm_series_coefficients(int m, int count, std::vector<double>& a, std::vector<double>& b);

/// Upper bound 2 sum_j (|a_j| phi^{2j+1} + |b_j| phi^{2j+2}) on the trace-norm
/// distance, phi = L/N, truncated at `terms` with a Cauchy-estimate tail
/// added. For N = 0 mod 4 the zero-mode convention removes one momentum from
/// the symmetric Fermi sea; that rank-one difference adds at most phi to the
/// distance and is included in the bound. Throws std::domain_error when
/// L/N >= 1 (the series diverges there).
double trace_norm_series_bound(int L, int N, int terms = 40);

} // namespace fflab
