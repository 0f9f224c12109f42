#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace spanner {

// Worker-pool size: SPANNER_THREADS env var, else hardware concurrency, capped.
inline int default_thread_count() {
  if (const char* env = std::getenv("SPANNER_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<int>(hw > 8 ? 8 : hw);
}

// Runs fn(i) for i in [begin, end); work items must be independent. Results
// must be written to per-index slots so the outcome is order-independent.
// The first worker exception is rethrown on the calling thread after join.
inline void parallel_for(size_t begin, size_t end, int threads,
                         const std::function<void(size_t)>& fn) {
  size_t count = end > begin ? end - begin : 0;
  if (count == 0) return;
  if (threads <= 1 || count == 1) {
    for (size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  size_t workers = std::min<size_t>(threads, count);
  std::atomic<size_t> next(begin);
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= end) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next.store(end);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace spanner
