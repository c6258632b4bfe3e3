#include "maxcov/parallel.hpp"

namespace maxcov {

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace maxcov
