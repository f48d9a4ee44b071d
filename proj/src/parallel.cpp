#include "xpr/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace xpr::par {

namespace {
std::atomic<Policy> g_policy{Policy::auto_detect};

bool env_forces_serial() {
  const char* v = std::getenv("XPRLAB_THREADS");
  return v != nullptr && std::string(v) == "1";
}
}  // namespace

void set_policy(Policy p) { g_policy.store(p); }

Policy policy() { return g_policy.load(); }

bool use_openmp() {
#if defined(_OPENMP)
  switch (g_policy.load()) {
    case Policy::serial:
      return false;
    case Policy::openmp:
      return true;
    case Policy::auto_detect:
      return !env_forces_serial();
  }
  return false;
#else
  return false;
#endif
}

int worker_count() {
#if defined(_OPENMP)
  if (use_openmp()) {
    const char* v = std::getenv("XPRLAB_THREADS");
    if (v != nullptr) {
      int n = std::atoi(v);
      if (n > 0) return n;
    }
    return omp_get_max_threads();
  }
#endif
  return 1;
}

}  // namespace xpr::par
