#include "lcspan/parallel.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace lcspan {

namespace {
int default_threads = 0;
}

void set_num_threads(int n)
{
#if defined(_OPENMP)
    if (default_threads == 0) default_threads = omp_get_max_threads();
    omp_set_num_threads(n < 1 ? default_threads : n);
#else
    (void)n;
    (void)default_threads;
#endif
}

int max_threads()
{
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace lcspan
