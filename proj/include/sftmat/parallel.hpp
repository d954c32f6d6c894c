#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sft {

// Splits [0, n) into contiguous chunks and runs fn(chunk, begin, end) on up to
// `threads` workers. Chunk c always covers the same range regardless of the
// thread count, so callers that merge per-chunk results in chunk order get
// schedule-independent output.
template <typename Fn>
void parallel_chunks(std::size_t n, std::size_t chunks, unsigned threads, Fn&& fn) {
  if (n == 0) return;
  chunks = std::max<std::size_t>(1, std::min(chunks, n));
  const std::size_t step = (n + chunks - 1) / chunks;
  auto run = [&](std::size_t c) {
    const std::size_t begin = c * step;
    const std::size_t end = std::min(n, begin + step);
    if (begin < end) fn(c, begin, end);
  };
  if (threads <= 1 || chunks == 1) {
    for (std::size_t c = 0; c < chunks; ++c) run(c);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::jthread> pool;
  const unsigned workers = std::min<std::size_t>(threads, chunks);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < chunks; c += workers) {
        try {
          run(c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline std::size_t default_chunks(std::size_t n) {
  return std::max<std::size_t>(1, std::min<std::size_t>(n, 64));
}

}  // namespace sft
