#pragma once

#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace optlab {

struct WorstCase {
  double value = -std::numeric_limits<double>::infinity();
  long index = -1;
};

// Maximum of f(0..n-1) with the attaining index; ties go to the lowest
// index so serial and parallel evaluation agree exactly.
template <class F>
WorstCase max_index_serial(long n, F&& f) {
  WorstCase w;
  for (long i = 0; i < n; ++i) {
    double v = f(i);
    if (v > w.value) {
      w.value = v;
      w.index = i;
    }
  }
  return w;
}

template <class F>
WorstCase max_index_parallel(long n, F&& f) {
#ifdef _OPENMP
  WorstCase w;
#pragma omp parallel
  {
    WorstCase local;
#pragma omp for nowait schedule(static)
    for (long i = 0; i < n; ++i) {
      double v = f(i);
      if (v > local.value) {
        local.value = v;
        local.index = i;
      }
    }
#pragma omp critical
    {
      if (local.value > w.value || (local.value == w.value && local.index < w.index))
        w = local;
    }
  }
  return w;
#else
  return max_index_serial(n, f);
#endif
}

template <class F>
WorstCase max_index(long n, F&& f, bool parallel) {
  return parallel ? max_index_parallel(n, f) : max_index_serial(n, f);
}

}  // namespace optlab
