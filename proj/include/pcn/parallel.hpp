#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace pcn {

inline unsigned effective_threads(unsigned requested = 0) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs fn(thread_id, begin, end) over [0, total) split into chunks claimed
// dynamically. Deterministic results require fn to write into per-index or
// per-thread storage.
template <typename Fn>
void parallel_chunks(std::uint64_t total, std::uint64_t chunk, unsigned threads, Fn&& fn) {
  threads = effective_threads(threads);
  if (total == 0) return;
  if (threads <= 1 || total <= chunk) {
    fn(0u, std::uint64_t{0}, total);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (;;) {
        std::uint64_t begin = next.fetch_add(chunk);
        if (begin >= total) break;
        std::uint64_t end = begin + chunk < total ? begin + chunk : total;
        fn(t, begin, end);
      }
    });
  }
  for (auto& th : pool) th.join();
}

// Simple parallel map over an index range; results collected densely.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
  std::vector<T> out(count);
  parallel_chunks(count, 16, threads, [&](unsigned, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) out[i] = fn(static_cast<std::size_t>(i));
  });
  return out;
}

}  // namespace pcn
