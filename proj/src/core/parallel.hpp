#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "core/bigint.hpp"

namespace divr {

inline unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(0), ..., fn(n_blocks - 1), possibly concurrently.  Callers keep
// determinism by writing results into per-block slots and merging in block
// order afterwards.  If any invocation throws, the exception from the lowest
// block index is rethrown after all workers finish (also block-order
// deterministic).
inline void run_blocks(u64 n_blocks, unsigned threads,
                       const std::function<void(u64)>& fn) {
  unsigned t = effective_threads(threads);
  std::vector<std::exception_ptr> errors(n_blocks);
  if (t <= 1 || n_blocks <= 1) {
    for (u64 b = 0; b < n_blocks; ++b) {
      try {
        fn(b);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  } else {
    std::atomic<u64> next{0};
    auto worker = [&] {
      for (;;) {
        u64 b = next.fetch_add(1);
        if (b >= n_blocks) return;
        try {
          fn(b);
        } catch (...) {
          errors[b] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    unsigned spawn = static_cast<unsigned>(std::min<u64>(t, n_blocks));
    pool.reserve(spawn);
    for (unsigned i = 0; i < spawn; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (u64 b = 0; b < n_blocks; ++b) {
    if (errors[b]) std::rethrow_exception(errors[b]);
  }
}

}  // namespace divr
