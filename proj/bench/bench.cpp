// Timing comparison of the OpenMP kernels against their serial reference.

#include "fflab/gfmps.hpp"
#include "fflab/hopping.hpp"
#include "fflab/kernels.hpp"
#include "fflab/spectrum.hpp"

#include <chrono>
#include <cstdio>
#include <vector>

using namespace fflab;

namespace {

template <typename F>
double time_ms(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-32s %10.1f %10.1f %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

} // namespace

int main(int argc, char** argv) {
  if (argc > 1) set_workers(std::atoi(argv[1]));
  std::printf("%-32s %10s %10s %8s   (workers: %d)\n", "kernel", "serial/ms", "omp/ms",
              "speedup", workers());

  {
    const int N = 8194;
    const double s = time_ms([&] { hopping_symbol(N, N, Execution::serial); });
    const double p = time_ms([&] { hopping_symbol(N, N, Execution::parallel); });
    row("ground-state symbol N=8194", s, p);
  }
  {
    const std::vector<int> Ls{512, 512, 768, 1024};
    const auto batch = [&](Execution ex) {
      std::vector<double> out(Ls.size());
      parallel_for(
          static_cast<std::int64_t>(Ls.size()),
          [&](std::int64_t i) {
            out[i] = renyi_entropy(gaussian_spectrum(correlation_infinite(Ls[i])), 1.0);
          },
          ex);
      return out;
    };
    const double s = time_ms([&] { batch(Execution::serial); }, 2);
    const double p = time_ms([&] { batch(Execution::parallel); }, 2);
    row("spectrum batch L<=1024", s, p);
  }
  {
    const std::vector<int> Ns{34, 66, 130, 258, 514};
    const double s =
        time_ms([&] { bond_dimension_scan(Ns, 1e-4, Strategy::log_spread, Execution::serial); }, 2);
    const double p = time_ms(
        [&] { bond_dimension_scan(Ns, 1e-4, Strategy::log_spread, Execution::parallel); }, 2);
    row("bond-dimension scan 1e-4", s, p);
  }
  return 0;
}
