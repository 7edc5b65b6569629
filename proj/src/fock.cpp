#include "fflab/fock.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <bit>
#include <cmath>

namespace fflab {

namespace {

int parity_below(unsigned long long bits, int mode) {
  const unsigned long long mask = (1ULL << mode) - 1;
  return std::popcount(bits & mask) % 2 ? -1 : 1;
}

} // namespace

Eigen::VectorXcd apply_annihilation(const Eigen::VectorXcd& v, int mode, int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  const unsigned long long bit = 1ULL << mode;
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (!(b & static_cast<Eigen::Index>(bit))) continue;
    out[b ^ bit] += static_cast<double>(parity_below(b, mode)) * v[b];
  }
  return out;
}

Eigen::VectorXcd apply_creation(const Eigen::VectorXcd& v, int mode, int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  const unsigned long long bit = 1ULL << mode;
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (b & static_cast<Eigen::Index>(bit)) continue;
    out[b | bit] += static_cast<double>(parity_below(b, mode)) * v[b];
  }
  return out;
}

Eigen::VectorXcd apply_majorana(const Eigen::VectorXcd& v, int majorana, int n) {
  const int mode = majorana / 2;
  if (majorana % 2 == 0) return apply_annihilation(v, mode, n) + apply_creation(v, mode, n);
  return Cplx(0, 1) * (apply_annihilation(v, mode, n) - apply_creation(v, mode, n));
}

DenseState dense_from_correlation(const CorrelationMatrix& c) {
  const int n = static_cast<int>(c.modes());
  if (n > kMaxDenseModes)
    throw std::invalid_argument("dense_from_correlation: mode cap exceeded");
  Eigen::SelfAdjointEigenSolver<CMat> es(c.matrix());
  // Projector check: eigenvalues near {0, 1}.
  int filled = 0;
  for (int i = 0; i < n; ++i) {
    const double v = es.eigenvalues()[i];
    if (std::abs(v) < 1e-9) continue;
    if (std::abs(v - 1.0) < 1e-9) {
      ++filled;
      continue;
    }
    throw std::invalid_argument("dense_from_correlation: C is not a projector");
  }
  // Note: <a^dag a> = C with C = U P U^dag means the filled orbitals carry the
  // ROW structure of the eigenvectors conjugated; for a Slater determinant
  // prod_m b_m^dag |0> with b_m^dag = sum_i U_im a_i^dag, one gets
  // <a_i^dag a_j> = (U U^dag)_{ji} = conj(U U^dag)_{ij}. Use the conjugated
  // eigenvectors so the dense expectations reproduce C exactly.
  CMat u(n, filled);
  int col = 0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(es.eigenvalues()[i] - 1.0) < 1e-9) u.col(col++) = es.eigenvectors().col(i).conjugate();
  }
  // Phase pinning: first above-threshold component real positive.
  for (int m = 0; m < filled; ++m) {
    for (int i = 0; i < n; ++i) {
      const Cplx z = u(i, m);
      if (std::abs(z) > 1e-8) {
        u.col(m) *= std::conj(z) / std::abs(z);
        break;
      }
    }
  }
  const Eigen::Index dim = Eigen::Index(1) << n;
  DenseState psi;
  psi.modes = n;
  psi.amp = Eigen::VectorXcd::Zero(dim);
  if (filled == 0) {
    psi.amp[0] = 1.0;
    return psi;
  }
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (std::popcount(static_cast<unsigned long long>(b)) != filled) continue;
    CMat sub(filled, filled);
    int row = 0;
    for (int i = 0; i < n; ++i)
      if (b & (Eigen::Index(1) << i)) sub.row(row++) = u.row(i);
    psi.amp[b] = sub.determinant();
  }
  psi.amp.normalize();
  return psi;
}

namespace {

// c_maj on a basis index: flips one bit and multiplies the phase.
std::pair<Eigen::Index, Cplx> majorana_on_basis(Eigen::Index b, int maj) {
  const int mode = maj / 2;
  const Eigen::Index bit = Eigen::Index(1) << mode;
  const double sgn = parity_below(static_cast<unsigned long long>(b), mode);
  const bool occ = b & bit;
  if (maj % 2 == 0) return {b ^ bit, Cplx(sgn, 0.0)};
  return {b ^ bit, occ ? Cplx(0.0, sgn) : Cplx(0.0, -sgn)};
}

} // namespace

DenseState dense_from_covariance(const MajoranaCovariance& g) {
  const int n = static_cast<int>(g.modes());
  if (n > kMaxDenseModesPaired)
    throw std::invalid_argument("dense_from_covariance: mode cap exceeded");
  if (!g.is_pure()) throw std::invalid_argument("dense_from_covariance: state is not pure");
  const Eigen::Index dim = Eigen::Index(1) << n;
  // H = (i/4) sum_{mn} Gamma_mn c_m c_n has the target state as its unique
  // top eigenvector (eigenvalue n/2, gap 1).
  CMat h = CMat::Zero(dim, dim);
  const Mat& G = g.matrix();
  for (int m = 0; m < 2 * n; ++m) {
    for (int mn = 0; mn < 2 * n; ++mn) {
      if (m == mn || G(m, mn) == 0.0) continue;
      const Cplx coeff = Cplx(0, 0.25) * G(m, mn);
      for (Eigen::Index b = 0; b < dim; ++b) {
        const auto [b1, p1] = majorana_on_basis(b, mn);
        const auto [b2, p2] = majorana_on_basis(b1, m);
        h(b2, b) += coeff * p1 * p2;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  DenseState psi;
  psi.modes = n;
  psi.amp = es.eigenvectors().col(dim - 1);
  return psi;
}

Cplx dense_overlap(const DenseState& a, const DenseState& b) {
  if (a.modes != b.modes) throw std::invalid_argument("dense_overlap: dimension mismatch");
  return a.amp.dot(b.amp);  // conjugates the left argument
}

std::vector<double> dense_schmidt(const DenseState& psi, const Bipartition& bip) {
  const int n = psi.modes;
  if (bip.total_modes() != n) throw std::invalid_argument("dense_schmidt: bipartition mismatch");
  const int na = static_cast<int>(bip.left().size());
  const int nb = n - na;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(1) << na, Eigen::Index(1) << nb);
  for (Eigen::Index b = 0; b < psi.amp.size(); ++b) {
    Eigen::Index row = 0, col = 0;
    for (int t = 0; t < na; ++t)
      if (b & (Eigen::Index(1) << bip.left()[t])) row |= Eigen::Index(1) << t;
    for (int t = 0; t < nb; ++t)
      if (b & (Eigen::Index(1) << bip.right()[t])) col |= Eigen::Index(1) << t;
    // Fermionic reordering sign: move occupied left modes in front of the
    // occupied right modes; each (a in left, r in right, r < a) pair flips.
    int inv = 0;
    for (int t = 0; t < na; ++t) {
      if (!(b & (Eigen::Index(1) << bip.left()[t]))) continue;
      for (int s = 0; s < nb; ++s)
        if ((b & (Eigen::Index(1) << bip.right()[s])) && bip.right()[s] < bip.left()[t]) ++inv;
    }
    m(row, col) = (inv % 2 ? -1.0 : 1.0) * psi.amp[b];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  std::vector<double> s(svd.singularValues().data(),
                        svd.singularValues().data() + svd.singularValues().size());
  return s;
}

double dense_renyi(const DenseState& psi, const Bipartition& bip, double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("dense_renyi: alpha must be positive");
  const auto s = dense_schmidt(psi, bip);
  if (std::isinf(alpha)) {
    double mx = 0;
    for (double v : s) mx = std::max(mx, v * v);
    return -std::log(mx);
  }
  if (alpha == 1.0) {
    double e = 0;
    for (double v : s) {
      const double p = v * v;
      if (p > 1e-300) e -= p * std::log(p);
    }
    return e;
  }
  double z = 0;
  for (double v : s) z += std::pow(v * v, alpha);
  return std::log(z) / (1.0 - alpha);
}

CMat dense_correlation_of(const DenseState& psi) {
  const int n = psi.modes;
  CMat c(n, n);
  std::vector<Eigen::VectorXcd> av(n);
  for (int i = 0; i < n; ++i) av[i] = apply_annihilation(psi.amp, i, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = av[i].dot(av[j]);  // <a_i psi | a_j psi>
  return c;
}

CMat dense_pairing_of(const DenseState& psi) {
  const int n = psi.modes;
  CMat f(n, n);
  std::vector<Eigen::VectorXcd> av(n);
  for (int i = 0; i < n; ++i) av[i] = apply_annihilation(psi.amp, i, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // <a_i a_j> = <psi | a_i a_j psi> = <a_i^dag psi | a_j psi>
      const Eigen::VectorXcd adg = apply_creation(psi.amp, i, n);
      f(i, j) = adg.dot(av[j]);
    }
  return f;
}

Mat dense_covariance_of(const DenseState& psi) {
  const int n = psi.modes;
  Mat g(2 * n, 2 * n);
  std::vector<Eigen::VectorXcd> cv(2 * n);
  for (int m = 0; m < 2 * n; ++m) cv[m] = apply_majorana(psi.amp, m, n);
  for (int m = 0; m < 2 * n; ++m) {
    for (int mn = 0; mn < 2 * n; ++mn) {
      if (m == mn) {
        g(m, mn) = 0.0;
        continue;
      }
      // (i/2)<[c_m, c_n]> = i <c_m c_n> off the diagonal.
      const Cplx val = Cplx(0, 1) * cv[m].dot(cv[mn]);
      g(m, mn) = val.real();
    }
  }
  return g;
}

} // namespace fflab
