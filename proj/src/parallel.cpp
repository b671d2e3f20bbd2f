// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "roelab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace roelab {

namespace {
std::atomic<std::size_t> g_override{0};
}

std::size_t max_threads() {
  if (const std::size_t o = g_override.load()) return o;
  if (const char* env = std::getenv("ROELAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void set_max_threads(std::size_t n) { g_override.store(n); }

}  // namespace roelab
