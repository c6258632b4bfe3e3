#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace maxcov {

// Worker count for `threads` (<= 0 means the OpenMP default).
int resolve_threads(int threads);

// Runs body(i) for every trial index i in [0, count) and returns the
// results ordered by index. Trials are handed out dynamically; since each
// trial seeds itself from its index, the output does not depend on the
// thread count. The first exception (lowest index) is rethrown.
template <class T, class Body>
std::vector<T> run_trials(std::size_t count, int threads, Body&& body) {
  std::vector<T> results(count);
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
  for (long long i = 0; i < n; ++i) {
    try {
      results[static_cast<std::size_t>(i)] = body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

// Serial reference for run_trials.
template <class T, class Body>
std::vector<T> run_trials_serial(std::size_t count, Body&& body) {
  std::vector<T> results;
  results.reserve(count);
  for (std::size_t i = 0; i < count; ++i) results.push_back(body(i));
  return results;
}

}  // namespace maxcov
