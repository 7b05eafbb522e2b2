#pragma once

#include <exception>
#include <mutex>

#include <omp.h>

namespace lcs {

/// Caps the number of OpenMP workers used by the library; n <= 0 restores the
/// runtime default.
void set_thread_cap(int n);
int thread_cap();

/// Runs body(i) for i in [0, n) on the OpenMP team. Bodies must write only to
/// per-index outputs. If several bodies throw, the exception of the smallest
/// index is rethrown, so failures are reported deterministically.
template <class Body>
void parallel_for(long n, Body&& body) {
  std::exception_ptr first;
  long first_index = n;
  std::mutex m;
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_cap())
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(m);
      if (i < first_index) {
        first_index = i;
        first = std::current_exception();
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace lcs
