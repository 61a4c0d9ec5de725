#pragma once

// Deterministic fork/join over an index range. Work is split into contiguous
// chunks; each index is processed exactly once and results land in caller-
// owned slots, so output never depends on the number of threads.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace n32 {

/// Thread budget used by all modules; 0 means hardware concurrency.
void set_thread_budget(unsigned n);
unsigned thread_budget();

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = 0)
{
  if (threads == 0)
    threads = thread_budget();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        const std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i)
          fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool)
    th.join();
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace n32
