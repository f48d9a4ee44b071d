#pragma once

#include <cstddef>
#include <vector>

namespace xpr::par {

/// Execution policy for the data-parallel kernels. Every kernel has a serial
/// reference path; the OpenMP path must produce identical results, and the
/// test suite checks that on each kernel.
enum class Policy { serial, openmp, auto_detect };

/// Process-wide policy. auto_detect means "OpenMP if compiled in and
/// XPRLAB_THREADS is not 1".
void set_policy(Policy p);
Policy policy();
bool use_openmp();
int worker_count();

/// Runs body(i) for i in [0, n). Ordering of side effects across iterations
/// is unspecified under OpenMP; use chunked() when merge order matters.
template <class F>
void parallel_for(std::size_t n, F&& body);

/// Splits [0, n) into contiguous chunks, runs chunk_body(chunk_index, begin,
/// end) possibly in parallel, with one result slot per chunk. The caller
/// merges the returned slots in chunk order, which keeps reductions
/// deterministic regardless of thread timing.
template <class R, class F>
std::vector<R> chunked(std::size_t n, std::size_t n_chunks, F&& chunk_body);

}  // namespace xpr::par

// ---- implementation ----

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace xpr::par {

template <class F>
void parallel_for(std::size_t n, F&& body) {
#if defined(_OPENMP)
  if (use_openmp()) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

template <class R, class F>
std::vector<R> chunked(std::size_t n, std::size_t n_chunks, F&& chunk_body) {
  if (n_chunks == 0) n_chunks = 1;
  if (n_chunks > n && n > 0) n_chunks = n;
  if (n == 0) return {};
  std::vector<R> slots(n_chunks);
  const std::size_t base = n / n_chunks, extra = n % n_chunks;
  auto run = [&](std::size_t c) {
    const std::size_t begin = c * base + std::min(c, extra);
    const std::size_t end = begin + base + (c < extra ? 1 : 0);
    slots[c] = chunk_body(c, begin, end);
  };
#if defined(_OPENMP)
  if (use_openmp()) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long c = 0; c < static_cast<long long>(n_chunks); ++c) {
      run(static_cast<std::size_t>(c));
    }
    return slots;
  }
#endif
  for (std::size_t c = 0; c < n_chunks; ++c) run(c);
  return slots;
}

}  // namespace xpr::par
