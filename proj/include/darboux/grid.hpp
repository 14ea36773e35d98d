#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace darboux {

struct GridPoint {
  double u, v;
};

enum class Exec { serial, parallel };

/// Map fn over points, writing fn(points[i]) into slot i of the result.
/// The parallel path distributes iterations with OpenMP; every iteration
/// writes only its own slot, so serial and parallel results are bit-identical.
/// An exception thrown by fn is captured inside the parallel region and the
/// first one is rethrown after the loop.
template <class R, class F>
std::vector<R> sweep(const std::vector<GridPoint>& points, F&& fn,
                     Exec exec = Exec::parallel) {
  std::vector<R> out(points.size());
#ifdef DARBOUX_HAVE_OPENMP
  if (exec == Exec::parallel) {
    std::exception_ptr first = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(points.size()); ++i) {
      try {
        out[static_cast<size_t>(i)] = fn(points[static_cast<size_t>(i)]);
      } catch (...) {
#pragma omp critical(darboux_sweep_error)
        if (!first) first = std::current_exception();
      }
    }
    if (first) std::rethrow_exception(first);
    return out;
  }
#else
  (void)exec;
#endif
  for (size_t i = 0; i < points.size(); ++i) out[i] = fn(points[i]);
  return out;
}

}  // namespace darboux
