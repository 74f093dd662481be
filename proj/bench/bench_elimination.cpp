// Benchmark for the exact Gauss-Jordan kernel: serial reference against the
// OpenMP row-update path, on random rational matrices of growing size. Both
// paths must produce bit-identical reduced forms; timings are wall-clock.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "srgeo/matrix.hpp"

using namespace srgeo;

namespace {

ExactMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  ExactMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rat(num(rng), den(rng));
  return m;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both paths run serially\n");
#endif
  std::printf("%8s %8s %12s %12s %8s\n", "rows", "cols", "serial ms", "parallel ms",
              "speedup");

  std::mt19937 rng(314159);
  int mismatches = 0;
  for (std::size_t n : {20u, 40u, 60u, 80u}) {
    const std::size_t rows = n;
    const std::size_t cols = n + n / 2;
    ExactMatrix m = random_matrix(rng, rows, cols);

    ExactMatrix serial = m;
    ExactMatrix parallel = m;
    std::vector<std::size_t> ps, pp;
    auto t_serial = std::chrono::steady_clock::now();
    ps = rref_inplace(serial, false);
    auto t_mid = std::chrono::steady_clock::now();
    pp = rref_inplace(parallel, true);
    auto t_end = std::chrono::steady_clock::now();

    double ms_serial = std::chrono::duration<double, std::milli>(t_mid - t_serial).count();
    double ms_parallel = std::chrono::duration<double, std::milli>(t_end - t_mid).count();

    if (ps != pp || !(serial == parallel)) {
      std::printf("MISMATCH at %zux%zu: serial and parallel reductions differ\n", rows,
                  cols);
      ++mismatches;
      continue;
    }
    std::printf("%8zu %8zu %12.2f %12.2f %7.2fx\n", rows, cols, ms_serial, ms_parallel,
                ms_parallel > 0 ? ms_serial / ms_parallel : 0.0);
  }

  if (mismatches > 0) {
    std::printf("%d size(s) disagreed\n", mismatches);
    return 1;
  }
  std::printf("serial and parallel reductions agree on every size\n");
  return 0;
}
