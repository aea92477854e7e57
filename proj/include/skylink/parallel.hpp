#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace skylink {

// Runs fn(i) for i in [0, count) on up to `workers` threads. Work items must
// write only to their own output slot; results are then independent of the
// worker count. The first exception thrown by any item is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  const std::size_t n_threads = std::min(workers, count);
  std::vector<std::thread> threads;
  threads.reserve(n_threads - 1);
  for (std::size_t t = 0; t + 1 < n_threads; ++t) threads.emplace_back(run);
  run();
  for (auto& th : threads) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace skylink
