#pragma once

#include "fflab/types.hpp"

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fflab {

/// Execution policy for the data-parallel kernels. Both paths compute
/// bit-identical results: parallel loops only distribute independent output
/// slots, they never reorder floating-point reductions.
enum class Execution { serial, parallel };

void set_workers(int n);
int workers();

template <typename F>
void parallel_for(std::int64_t n, F&& f, Execution ex = Execution::parallel) {
#ifdef _OPENMP
  if (ex == Execution::parallel && n > 1) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) f(i);
    return;
  }
#else
  (void)ex;
#endif
  for (std::int64_t i = 0; i < n; ++i) f(i);
}

/// Toeplitz symbol c_r, r = 0..L-1, of the hopping ground state on a ring of
/// N sites: c_r = (1/N) sum_k n_k e^{ikr} with the exact occupation n_k.
/// Complex in general (the N = 0 mod 4 zero-mode convention breaks k -> -k
/// symmetry); real for all other N.
std::vector<Cplx> hopping_symbol(int N, int L, Execution ex = Execution::parallel);

/// Toeplitz symbol of the infinite chain: sin(pi r/2)/(pi r), r=0 entry 1/2.
std::vector<double> infinite_symbol(int L);

namespace reference {
/// Straightforward single-threaded momentum sum, kept as the check against
/// the parallel kernel.
std::vector<Cplx> hopping_symbol(int N, int L);
} // namespace reference

} // namespace fflab
