#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cardgame {

inline constexpr std::uint64_t kChunkSize = 2048;

inline unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// Splits [0, total) into fixed-size chunks, evaluates fn(begin, end) for each on
// up to `jobs` threads, and returns the partial results in chunk order. The
// chunking does not depend on `jobs`, so merging the results left to right is
// bit-identical for any worker count.
template <typename Fn>
auto run_chunks(std::uint64_t total, unsigned jobs, Fn fn) {
  using Partial = decltype(fn(std::uint64_t{0}, std::uint64_t{0}));
  const std::uint64_t chunks = (total + kChunkSize - 1) / kChunkSize;
  std::vector<Partial> partials(chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      try {
        const std::uint64_t begin = c * kChunkSize;
        partials[c] = fn(begin, std::min(total, begin + kChunkSize));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, jobs), std::max<std::uint64_t>(chunks, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return partials;
}

}  // namespace cardgame
