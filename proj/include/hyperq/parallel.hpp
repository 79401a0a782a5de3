#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace hyperq::detail {

/// Number of workers for partitioned checks. HYPERQ_THREADS caps it.
inline std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HYPERQ_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
    } catch (...) {
    }
  }
  return n;
}

/// Splits [0, count) into contiguous chunks, runs `body(chunk, begin, end)`
/// on each and returns once all are done. Chunk i covers a range preceding
/// chunk i + 1, so callers can merge "first failure" results in chunk order.
template <class Body>
void for_each_chunk(std::size_t count, std::size_t chunks, Body&& body) {
  chunks = std::max<std::size_t>(1, std::min(chunks, count));
  if (chunks == 1) {
    body(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    threads.emplace_back([&body, c, begin, end] { body(c, begin, end); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace hyperq::detail
