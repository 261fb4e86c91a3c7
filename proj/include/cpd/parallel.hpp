#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace cpd {

/// Worker count: the explicit request if given, else CPD_WORKERS, else 1.
/// Throws std::invalid_argument on a zero or malformed value.
std::size_t resolve_workers(std::optional<std::size_t> requested);

/// Calls fn(i) for i in [0, n), splitting the range into contiguous chunks
/// over `workers` threads. fn must only write state owned by index i. If any
/// call throws, the exception from the lowest failing index is rethrown after
/// all threads join.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  struct Failure {
    std::size_t index;
    std::exception_ptr error;
  };
  std::vector<std::optional<Failure>> failures(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      for (std::size_t i = begin; i < end; ++i) {
        try {
          fn(i);
        } catch (...) {
          failures[w] = Failure{i, std::current_exception()};
          return;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f->error);
  }
}

}  // namespace cpd
