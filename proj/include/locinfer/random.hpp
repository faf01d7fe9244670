#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace locinfer {

using Rng = std::mt19937_64;

/// Independent stream for (seed, index); trials and workers can run in any order.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

/// Number of failures before the next success of a Bernoulli(p) sequence.
inline std::uint64_t geometric_skip(Rng& rng, double log_q) {
  const double r = uniform01(rng);
  const double skip = std::floor(std::log1p(-r) / log_q);
  return skip >= 4.0e18 ? std::uint64_t{1} << 62 : static_cast<std::uint64_t>(skip);
}

/// G(n, p) over vertices [0, n): calls on_edge(v, w) with w < v for every
/// sampled unordered pair, skipping geometrically between successes so the
/// cost is proportional to the number of edges.
template <class OnEdge>
void sample_gnp(std::uint64_t n, double p, Rng& rng, OnEdge&& on_edge) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability outside [0,1]");
  if (n < 2 || p == 0.0) return;
  if (p == 1.0) {
    for (std::uint64_t v = 1; v < n; ++v)
      for (std::uint64_t w = 0; w < v; ++w) on_edge(v, w);
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t v = 1;
  std::uint64_t w = 0;
  w += geometric_skip(rng, log_q);
  for (;;) {
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v >= n) break;
    on_edge(v, w);
    w += 1 + geometric_skip(rng, log_q);
  }
}

/// Bernoulli(p) over the cells of a rows x cols grid, reported as (row, col).
template <class OnCell>
void sample_bernoulli_grid(std::uint64_t rows, std::uint64_t cols, double p, Rng& rng, OnCell&& on_cell) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("cell probability outside [0,1]");
  if (rows == 0 || cols == 0 || p == 0.0) return;
  const std::uint64_t total = rows * cols;
  if (p == 1.0) {
    for (std::uint64_t k = 0; k < total; ++k) on_cell(k / cols, k % cols);
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t k = geometric_skip(rng, log_q);
  while (k < total) {
    on_cell(k / cols, k % cols);
    k += 1 + geometric_skip(rng, log_q);
  }
}

/// `k` distinct indices from [0, n), uniformly, via partial Fisher-Yates.
inline std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n, std::uint64_t k, Rng& rng) {
  if (k > n) throw std::invalid_argument("sample larger than population");
  std::vector<std::uint64_t> pool(n);
  for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
  for (std::uint64_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::uint64_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace locinfer
