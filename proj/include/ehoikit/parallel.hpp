#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace ehoi {

// Runs fn(i) for i in [0, n). With jobs > 1 the indices are processed by a
// small thread pool; callers store results into preallocated slots so the
// outcome is independent of scheduling. If any calls throw, the exception of
// the lowest index is rethrown.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::atomic<std::size_t> next{0};
  std::vector<std::pair<std::size_t, std::exception_ptr>> errors;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          errors.emplace_back(i, std::current_exception());
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (!errors.empty()) {
    auto first = errors.front();
    for (const auto& e : errors)
      if (e.first < first.first) first = e;
    std::rethrow_exception(first.second);
  }
}

}  // namespace ehoi
