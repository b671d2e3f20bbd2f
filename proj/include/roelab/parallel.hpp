// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_PARALLEL_HPP
#define ROELAB_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace roelab {

/// Thread cap: set_max_threads() if called, else ROELAB_THREADS, else hardware concurrency.
std::size_t max_threads();
void set_max_threads(std::size_t n);  // 0 restores the environment default

/// Runs body(i) for i in [0, count) over contiguous chunks. Callers write into
/// per-index slots, so results never depend on the thread count.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t threads = std::min(max_threads(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace roelab

#endif  // ROELAB_PARALLEL_HPP
