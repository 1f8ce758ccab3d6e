#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cmgeval {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads, each owning a contiguous block.
/// Results must be written to per-index slots, which keeps output independent of `jobs`.
/// The first exception (by index order of the failing block) is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    const std::size_t block = (n + jobs - 1) / jobs;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        const std::size_t begin = w * block;
        const std::size_t end = std::min(n, begin + block);
        try {
          for (std::size_t i = begin; i < end; ++i) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace cmgeval
