#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace wect {

// Runs fn(i) for i in [0, count). Work items must write to disjoint state so
// parallel and sequential runs produce identical results. threads == 0 uses
// all hardware threads, threads == 1 runs inline.
inline void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn) {
  if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (threads == 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  size_t workers = std::min<size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace wect
