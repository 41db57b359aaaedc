// Compares the OpenMP-parallel kernels against the serial reference path:
// operator assembly and Gagliardo seminorm evaluation, with a bit-identity
// check on the assembled entries.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fracsteady/fracop.hpp"
#include "fracsteady/mesh.hpp"

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

}  // namespace

int main() {
  using namespace fracsteady;
  const FracOrder s(0.5);
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both paths run serially\n");
#endif
  std::printf("%6s  %12s %12s %8s  %10s  %12s %12s %8s\n", "n", "asm-ser[s]", "asm-par[s]",
              "speedup", "max|diff|", "semi-ser[s]", "semi-par[s]", "speedup");

  for (const int n : {512, 1024, 2048}) {
    const GridPtr grid = build_grid(Interval{-1.0, 1.0}, n);

    double t = now();
    const OperatorMatrix a_serial = assemble_operator(grid, s, Execution::Serial);
    const double t_asm_serial = now() - t;

    t = now();
    const OperatorMatrix a_parallel = assemble_operator(grid, s, Execution::Parallel);
    const double t_asm_parallel = now() - t;

    const double diff = (a_serial.entries() - a_parallel.entries()).cwiseAbs().maxCoeff();

    GridFunction u(grid, Eigen::VectorXd(n));
    for (int i = 0; i < n; ++i) u.values[i] = std::sin(3.0 * grid->nodes()[i]) + 0.2;

    double t_semi_serial = 1e300, t_semi_parallel = 1e300;
    double g_serial = 0.0, g_parallel = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
      t = now();
      g_serial = gagliardo_seminorm(u, s, Execution::Serial);
      t_semi_serial = std::min(t_semi_serial, now() - t);
      t = now();
      g_parallel = gagliardo_seminorm(u, s, Execution::Parallel);
      t_semi_parallel = std::min(t_semi_parallel, now() - t);
    }

    std::printf("%6d  %12.4f %12.4f %8.2f  %10.3g  %12.5f %12.5f %8.2f\n", n, t_asm_serial,
                t_asm_parallel, t_asm_serial / t_asm_parallel, diff, t_semi_serial,
                t_semi_parallel, t_semi_serial / t_semi_parallel);
    if (diff != 0.0 || g_serial != g_parallel) {
      std::printf("MISMATCH: serial and parallel paths disagree (entries %.3g, seminorm %.17g vs %.17g)\n",
                  diff, g_serial, g_parallel);
      return 1;
    }
  }
  return 0;
}
