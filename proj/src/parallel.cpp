#include "arcforge/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace arcforge {

namespace {

int default_workers() {
  if (const char* env = std::getenv("ARCFORGE_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

std::atomic<int> g_workers{0};

}  // namespace

int worker_count() {
  int n = g_workers.load(std::memory_order_relaxed);
  if (n <= 0) {
    n = default_workers();
    g_workers.store(n, std::memory_order_relaxed);
  }
  return n;
}

void set_worker_count(int n) { g_workers.store(n > 0 ? n : default_workers(), std::memory_order_relaxed); }

}  // namespace arcforge
