#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace polyft::detail {

// Runs fn(i) for i in [begin, end) on up to `jobs` threads.  Each index owns
// its output slot, so results are deterministic regardless of scheduling.
// The first exception is rethrown after all workers join.
inline void parallel_for(int begin, int end, int jobs,
                         const std::function<void(int)>& fn) {
  if (end <= begin) return;
  if (jobs <= 1 || end - begin == 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  const int workers = std::min(jobs, end - begin);
  std::atomic<int> next{begin};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= end) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace polyft::detail
