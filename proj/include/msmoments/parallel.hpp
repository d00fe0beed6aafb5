#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

#include "msmoments/numeric.hpp"

namespace msm {

/// Worker count used by every parallel loop in the library (default 1).
void set_thread_count(unsigned count);
unsigned thread_count();

/// Applies `work(chunk_index, begin, end)` to the fixed partition of
/// [0, n) into chunks of `chunk` items and returns the per-chunk results in
/// chunk order. The partition depends only on n and chunk, never on the
/// worker count, so reductions over the result are reproducible.
template <class T, class Work>
std::vector<T> map_chunks(std::size_t n, std::size_t chunk, Work&& work) {
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<T> results(chunks);
  const unsigned workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(chunks, 1));
  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    results[c] = work(c, begin, end);
  };
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) run_chunk(c);
    });
  }
  pool.clear();
  return results;
}

/// Pairwise reduction in fixed order.
double pairwise_sum(std::vector<double> values);

inline constexpr std::size_t kDefaultChunk = 4096;

/// Deterministic compensated sum of term(i) over i in [0, n).
template <class Term>
double chunked_sum(std::size_t n, Term&& term, std::size_t chunk = kDefaultChunk) {
  auto partials = map_chunks<double>(n, chunk, [&](std::size_t, std::size_t begin, std::size_t end) {
    CompensatedSum acc;
    for (std::size_t i = begin; i < end; ++i) acc.add(term(i));
    return acc.value();
  });
  return pairwise_sum(std::move(partials));
}

}  // namespace msm
