#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mforge {

enum class Exec { serial, parallel };

// Thread cap from MUTATION_FORGE_THREADS (unset or invalid: OpenMP default).
inline int thread_cap() {
  if (const char* s = std::getenv("MUTATION_FORGE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<int>(v);
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// out[i] = fn(i) for i < n. Results are stored per index so any later
// reduction in index order is independent of scheduling. The first exception
// (lowest index) is rethrown.
template <class T, class Fn>
std::vector<T> index_map(size_t n, Exec exec, Fn&& fn) {
  std::vector<T> out(n);
  if (exec == Exec::serial || n < 2) {
    for (size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errs(n);
  const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_cap())
  for (long long i = 0; i < nn; ++i) {
    try {
      out[static_cast<size_t>(i)] = fn(static_cast<size_t>(i));
    } catch (...) {
      errs[static_cast<size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace mforge
