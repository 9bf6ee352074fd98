#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cubeperc {

/// Worker count: jobs if positive, otherwise the hardware concurrency.
inline int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

/// Evaluates fn(i) for i in [0, reps) on a fixed pool of workers and
/// returns the results in index order.  Workers pull indices from a shared
/// counter; since each replicate derives its own random stream from i the
/// output does not depend on the worker count.  The first exception thrown
/// by any replicate is rethrown after all workers stop.
template <class Fn>
auto replicate_map(std::uint64_t reps, int jobs, Fn&& fn) -> std::vector<decltype(fn(std::uint64_t{}))> {
  using Result = decltype(fn(std::uint64_t{}));
  std::vector<Result> out(reps);
  const int workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(resolve_jobs(jobs)),
                                                               std::max<std::uint64_t>(reps, 1)));
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= reps || failed.load()) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace cubeperc
