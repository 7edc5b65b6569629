#include "fflab/kernels.hpp"

#include "fflab/hopping.hpp"

#include <cmath>
#include <numbers>

namespace fflab {

namespace {
int g_workers = 0;
}

void set_workers(int n) {
  g_workers = n;
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#endif
}

int workers() {
#ifdef _OPENMP
  return g_workers > 0 ? g_workers : omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<Cplx> hopping_symbol(int N, int L, Execution ex) {
  if (N < 2) throw std::invalid_argument("hopping_symbol: N must be >= 2");
  if (L < 1 || L > N) throw std::invalid_argument("hopping_symbol: need 1 <= L <= N");
  const MomentumGrid grid = MomentumGrid::ring(N);
  std::vector<int> filled;
  for (int idx : grid.indices)
    if (is_filled(idx, N)) filled.push_back(idx);
  std::vector<Cplx> c(L);
  parallel_for(
      L,
      [&](std::int64_t r) {
        double re = 0.0, im = 0.0;
        for (int n : filled) {
          const double kr = 2.0 * std::numbers::pi * n * static_cast<double>(r) / N;
          re += std::cos(kr);
          im += std::sin(kr);
        }
        c[r] = Cplx(re / N, im / N);
      },
      ex);
  return c;
}

std::vector<double> infinite_symbol(int L) {
  if (L < 1) throw std::invalid_argument("infinite_symbol: L must be >= 1");
  std::vector<double> c(L);
  c[0] = 0.5;
  // sin(pi r/2) evaluated exactly: 0, 1, 0, -1 cycling with r.
  static constexpr double kSinHalfPi[4] = {0.0, 1.0, 0.0, -1.0};
  for (int r = 1; r < L; ++r) c[r] = kSinHalfPi[r % 4] / (std::numbers::pi * r);
  return c;
}

namespace reference {

std::vector<Cplx> hopping_symbol(int N, int L) {
  const MomentumGrid grid = MomentumGrid::ring(N);
  std::vector<Cplx> c(L, Cplx(0, 0));
  for (int r = 0; r < L; ++r) {
    double re = 0.0, im = 0.0;
    for (int n : grid.indices) {
      if (!is_filled(n, N)) continue;
      const double kr = 2.0 * std::numbers::pi * n * static_cast<double>(r) / N;
      re += std::cos(kr);
      im += std::sin(kr);
    }
    c[r] = Cplx(re / N, im / N);
  }
  return c;
}

} // namespace reference

} // namespace fflab
