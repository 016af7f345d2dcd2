#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace graspgen {

// Static-chunk parallel loop. Results must be written to index-addressed
// slots by the body; chunking is a pure function of (n, workers), so the
// output is identical no matter how threads are scheduled.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::thread> threads;
  threads.reserve(w);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t t = 0; t < w; ++t) {
    threads.emplace_back([&, t] {
      const std::size_t begin = n * t / w;
      const std::size_t end = n * (t + 1) / w;
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace graspgen
