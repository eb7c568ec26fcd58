#pragma once

#include <omp.h>

#include <cstddef>

namespace adlab::parallel {

// Work is split into fixed-size chunks whose partial results are combined in
// chunk order, so a reduction gives identical bits for any thread count.
inline constexpr std::size_t kDefaultChunk = 16;

inline int max_threads() { return omp_get_max_threads(); }

// Restores the previous OpenMP thread count on destruction.
class ThreadCountGuard {
 public:
  explicit ThreadCountGuard(int threads) : previous_(omp_get_max_threads()) {
    omp_set_num_threads(threads);
  }
  ~ThreadCountGuard() { omp_set_num_threads(previous_); }
  ThreadCountGuard(const ThreadCountGuard&) = delete;
  ThreadCountGuard& operator=(const ThreadCountGuard&) = delete;

 private:
  int previous_;
};

inline std::size_t chunk_count(std::size_t n, std::size_t chunk) {
  return chunk == 0 ? 0 : (n + chunk - 1) / chunk;
}

}  // namespace adlab::parallel
