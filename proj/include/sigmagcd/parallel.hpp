#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace sigmagcd {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(block_begin, block_end) over [begin, end) cut into fixed-size blocks
/// and returns the per-block results in block order, whatever the thread count.
template <class Fn>
auto map_blocks(std::uint64_t begin, std::uint64_t end, std::uint64_t block, unsigned threads, Fn fn)
    -> std::vector<std::invoke_result_t<Fn&, std::uint64_t, std::uint64_t>> {
  using Result = std::invoke_result_t<Fn&, std::uint64_t, std::uint64_t>;
  if (end <= begin) return {};
  block = std::max<std::uint64_t>(block, 1);
  const std::uint64_t count = (end - begin + block - 1) / block;
  std::vector<Result> results(count);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::uint64_t i = next++; i < count; i = next++) {
      const std::uint64_t lo = begin + i * block;
      const std::uint64_t hi = std::min(end, lo + block);
      try {
        results[i] = fn(lo, hi);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };

  const unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), count));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace sigmagcd
