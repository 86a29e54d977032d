#pragma once

// Execution policy shared by the data-parallel kernels. Every kernel keeps
// a plain serial loop as the reference; the parallel variant must produce
// bit-identical results, which the kernel tests check.

#ifdef _OPENMP
#include <omp.h>
#endif

namespace opengrid {

enum class ExecPolicy { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace opengrid
