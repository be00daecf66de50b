#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kitaev_qfi {

/// out[i] = fn(i) for i in [0, count), spread over hardware threads.
/// Results land at their own index, so the output order never depends on
/// scheduling. The first exception thrown by fn is rethrown on the caller.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t count, Fn fn) {
  std::vector<Result> out(count);
  const std::size_t workers = std::min<std::size_t>(
      count, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace kitaev_qfi
