#pragma once

#include "fflab/types.hpp"

#include <cstdint>
#include <span>

namespace fflab {

/// Majorana covariance of the number-conserving Gaussian state with
/// <a^dag a> = C and <aa> = 0. In flavor blocks (interleaved storage):
///   Gamma[2i, 2j]     = -2 Im C_ij
///   Gamma[2i, 2j+1]   = delta_ij - 2 Re C_ij
///   Gamma[2i+1, 2j]   = 2 Re C_ij - delta_ij
///   Gamma[2i+1, 2j+1] = -2 Im C_ij
/// Throws std::invalid_argument if C is unphysical.
MajoranaCovariance to_majorana(const CorrelationMatrix& c);

/// Inverse of to_majorana. Throws std::invalid_argument("not number-conserving")
/// when the pairing block <a_i a_j> reconstructed from Gamma exceeds tol.
CorrelationMatrix to_correlation(const MajoranaCovariance& g, double tol = 1e-12);

/// Pairing amplitudes F_ij = <a_i a_j> encoded in Gamma; zero exactly when the
/// state is number-conserving.
CMat pairing_block(const MajoranaCovariance& g);

/// Seeded random pure Gaussian state Gamma = R Gamma_0 R^T with Gamma_0 the
/// vacuum covariance and R a Haar-ish random orthogonal from a pinned RNG
/// recipe. With number_conserving, R is restricted to the image of U(n)
/// composed with particle-hole flips on floor(n/2) modes, i.e. the state is a
/// random Slater determinant at filling floor(n/2).
MajoranaCovariance random_pure_gaussian(int n, std::uint64_t seed, bool number_conserving = false);

/// Principal submatrix (C_ij)_{i,j in region}. Throws on out-of-range indices.
CorrelationMatrix restrict_modes(const CorrelationMatrix& c, std::span<const int> region);

/// Majorana-side restriction: keeps rows/columns {2m, 2m+1 : m in region}.
MajoranaCovariance restrict_majorana(const MajoranaCovariance& g, std::span<const int> region);

/// Random orthogonal / unitary with a deterministic construction (Ginibre +
/// Householder QR, R-diagonal sign fix). Exposed for tests.
Mat random_orthogonal(int n, std::uint64_t seed);
CMat random_unitary(int n, std::uint64_t seed);

} // namespace fflab
