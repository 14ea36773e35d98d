#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef DARBOUX_HAVE_OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "darboux/gauss.hpp"
#include "darboux/incidence.hpp"
#include "darboux/second_forms.hpp"
#include "darboux/surfaces.hpp"

using namespace darboux;

namespace {

double seconds(const std::function<void()>& fn, int repeat) {
  double best = 1e300;
  for (int i = 0; i < repeat; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

/// Times one grid kernel serial vs parallel and checks that both executions
/// produce the same headline residual (the sweep contract is deterministic).
void bench(const char* name, int repeat,
           const std::function<double(Exec)>& kernel) {
  double r_serial = 0, r_parallel = 0;
  double t_serial = seconds([&] { r_serial = kernel(Exec::serial); }, repeat);
  double t_parallel =
      seconds([&] { r_parallel = kernel(Exec::parallel); }, repeat);
  std::printf("  %-28s %9.1f ms %9.1f ms %7.2fx   %s\n", name,
              1e3 * t_serial, 1e3 * t_parallel, t_serial / t_parallel,
              r_serial == r_parallel ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-sweep kernels: serial reference vs parallel execution"};
  std::string pair_name = "paraboloid";
  int grid = 64;
  int repeat = 3;
  app.add_option("--pair", pair_name, "catalog pair to sweep");
  app.add_option("--grid", grid, "sample grid is NxN")
      ->check(CLI::Range(2, 2000));
  app.add_option("--repeat", repeat, "repetitions, best time kept")
      ->check(CLI::Range(1, 100));
  CLI11_PARSE(app, argc, argv);

  const DeformationPair& p = find_pair(pair_name);
#ifdef DARBOUX_HAVE_OPENMP
  std::printf("pair %s, grid %dx%d, best of %d, %d threads\n\n",
              p.name.c_str(), grid, grid, repeat, omp_get_max_threads());
#else
  std::printf("pair %s, grid %dx%d, best of %d, OpenMP disabled\n\n",
              p.name.c_str(), grid, grid, repeat);
#endif
  std::printf("  %-28s %12s %12s %8s\n", "kernel", "serial", "parallel",
              "speedup");

  auto grid_pts = pair_grid(p, grid);
  bench("isometry-validation", repeat, [&](Exec e) {
    return validate_pair(p, grid_pts, e).max_isometry_residual;
  });
  bench("differential-triality", repeat, [&](Exec e) {
    return verify_differential_triality(p, grid, e).max_residual();
  });
  bench("triality-cycle", repeat, [&](Exec e) {
    return verify_triality_cycle(p, grid, e).max_residual();
  });
  bench("form-rank-table", repeat, [&](Exec e) {
    return rank_table(p, grid, e).kernel_angle;
  });
  bench("incidence-membership", repeat, [&](Exec e) {
    return integral_surface_check(p, grid, e).max_residual;
  });
  return 0;
}
