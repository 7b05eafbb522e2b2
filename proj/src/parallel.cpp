#include "lcs/parallel.hpp"

#include <atomic>

namespace lcs {

namespace {
std::atomic<int> g_cap{0};
}

void set_thread_cap(int n) { g_cap = n > 0 ? n : 0; }

int thread_cap() {
  const int c = g_cap.load();
  return c > 0 ? c : omp_get_max_threads();
}

}  // namespace lcs
