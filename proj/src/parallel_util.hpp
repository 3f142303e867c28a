#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace ideaforge::detail {

/// Runs fn(i) for i in [0, count) on up to `parallelism` threads. Work items
/// must be independent; fn is responsible for writing results into
/// index-addressed slots so output order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, int parallelism, Fn&& fn) {
  if (count == 0) return;
  const auto workers =
      static_cast<std::size_t>(parallelism > 1 ? parallelism : 1);
  if (workers <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      fn(i);
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (std::size_t t = 1; t < workers && t < count; ++t) threads.emplace_back(worker);
  worker();
  for (auto& thread : threads) thread.join();
}

}  // namespace ideaforge::detail
