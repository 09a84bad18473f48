#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace lt {

// Static-chunk parallel loop over [0, n). Workers must write only to
// disjoint output slots indexed by i; under that contract the result is
// identical to the serial loop regardless of scheduling, which keeps
// parallel call sites bit-reproducible.
inline void parallel_for(std::int64_t n,
                         const std::function<void(std::int64_t)>& body) {
  if (n <= 0) return;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::int64_t workers =
      std::min<std::int64_t>(static_cast<std::int64_t>(hw), n);
  if (workers == 1 || n < 4) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (std::int64_t w = 0; w < workers; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[static_cast<size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace lt
