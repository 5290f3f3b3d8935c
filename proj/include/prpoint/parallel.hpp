#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace prpoint {

// Splits [0, n) into `threads` contiguous chunks and runs body(begin, end,
// chunk) on each. Chunk boundaries depend only on n and threads, and callers
// combine per-chunk results in chunk order, so exact reductions do not depend
// on scheduling.
template <class Body>
void parallel_chunks(std::size_t n, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    body(std::size_t{0}, n, 0u);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = n * t / threads, hi = n * (t + 1) / threads;
    pool.emplace_back([&, lo, hi, t] {
      try {
        body(lo, hi, t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

unsigned default_thread_count();

}  // namespace prpoint
