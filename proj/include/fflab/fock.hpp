#pragma once

#include "fflab/types.hpp"

#include <vector>

namespace fflab {

/// Dense Fock-space vector over the occupation basis. Bit i of the basis
/// index is the occupation of mode i (mode 0 least significant); the basis
/// state |b> is prod over occupied modes, ascending, of a^dag applied to the
/// vacuum. Brute-force reference for small n only.
struct DenseState {
  Eigen::VectorXcd amp;
  int modes = 0;
};

inline constexpr int kMaxDenseModes = 14;        // number-conserving path
inline constexpr int kMaxDenseModesPaired = 12;  // general (paired) path

/// Slater determinant of the pure number-conserving state with projector C
/// (C^2 = C to 1e-9): amplitude of pattern S = det of the S-rows of an
/// orthonormal filled-orbital basis of range(C). Orbital phases are pinned by
/// making the first above-threshold component of each orbital real positive.
DenseState dense_from_correlation(const CorrelationMatrix& c);

/// General pure Gaussian state: the top eigenvector of the quadratic witness
/// H = (i/4) sum_{mn} Gamma_mn c_m c_n, whose unique maximal eigenstate has
/// covariance Gamma. Global phase is not pinned.
DenseState dense_from_covariance(const MajoranaCovariance& g);

Cplx dense_overlap(const DenseState& a, const DenseState& b);

/// Schmidt coefficients across bip, descending. Modes are reordered to
/// (left..., right...) with the fermionic reordering signs before reshaping.
std::vector<double> dense_schmidt(const DenseState& psi, const Bipartition& bip);

/// Renyi entropy of the reduced state from the squared Schmidt coefficients.
double dense_renyi(const DenseState& psi, const Bipartition& bip, double alpha);

/// Expectation values recomputed from the dense vector.
CMat dense_correlation_of(const DenseState& psi);   // <a_i^dag a_j>
CMat dense_pairing_of(const DenseState& psi);       // <a_i a_j>
Mat dense_covariance_of(const DenseState& psi);     // (i/2) <[c_m, c_n]>

/// Dense operator application helpers (JW signs), exposed for tests.
Eigen::VectorXcd apply_annihilation(const Eigen::VectorXcd& v, int mode, int n);
Eigen::VectorXcd apply_creation(const Eigen::VectorXcd& v, int mode, int n);
Eigen::VectorXcd apply_majorana(const Eigen::VectorXcd& v, int majorana, int n);

} // namespace fflab
