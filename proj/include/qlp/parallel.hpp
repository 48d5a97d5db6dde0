#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qlp {

// Requested thread count resolved against the QLP_THREADS environment
// variable (when requested == 0) and hardware concurrency. Always >= 1.
unsigned resolve_thread_count(unsigned requested);

// Runs body(0) .. body(count-1) on up to `threads` workers pulling from a
// shared atomic counter. Task results must land in pre-allocated slots
// indexed by the task id so output order never depends on scheduling.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  if (threads <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
      body(i);
  };
  std::vector<std::thread> pool;
  const std::size_t spawn =
      std::min<std::size_t>(threads, count);
  pool.reserve(spawn);
  for (std::size_t w = 0; w < spawn; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace qlp
