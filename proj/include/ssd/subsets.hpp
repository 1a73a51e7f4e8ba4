#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ssd {

/// Number of k-subsets of an n-set, exact; throws if it does not fit in 64 bits.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > static_cast<__int128>(INT64_MAX)) throw std::overflow_error("binomial coefficient overflows");
  }
  return static_cast<std::int64_t>(r);
}

/// Visits every k-subset of {0, ..., q-1} in lexicographic order. The callback
/// receives the current subset as a span of ascending indices.
template <class F>
void for_each_combination(std::size_t q, std::size_t k, F&& visit) {
  if (k > q) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (k == 0) {
    visit(std::span<const std::size_t>(idx));
    return;
  }
  while (true) {
    visit(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == q - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

namespace detail {

template <class F>
void xor_walk(std::span<const std::uint64_t> pool, std::size_t start, std::size_t remaining,
              std::uint64_t acc, F& visit) {
  if (remaining == 0) {
    visit(acc);
    return;
  }
  for (std::size_t i = start; i + remaining <= pool.size(); ++i)
    xor_walk(pool, i + 1, remaining - 1, acc ^ pool[i], visit);
}

}  // namespace detail

/// Visits the XOR (entrywise product) of every k-subset of pool, in
/// lexicographic order of the subsets, folded onto `base`.
template <class F>
void for_each_subset_product(std::span<const std::uint64_t> pool, std::size_t k, std::uint64_t base,
                             F&& visit) {
  if (k > pool.size()) return;
  detail::xor_walk(pool, 0, k, base, visit);
}

/// Sum over k-subsets of pool of value(product). The enumeration is split by
/// leading element across `workers` threads; the reduction is an integer sum
/// so the result does not depend on the split.
template <class Value>
std::int64_t reduce_subset_products(std::span<const std::uint64_t> pool, std::size_t k,
                                    std::uint64_t base, Value value, unsigned workers = 1) {
  if (k > pool.size()) return 0;
  if (k == 0) return value(base);
  const std::size_t leads = pool.size() - k + 1;
  auto run = [&](unsigned w, unsigned stride) {
    std::int64_t total = 0;
    auto add = [&](std::uint64_t x) { total += value(x); };
    for (std::size_t lead = w; lead < leads; lead += stride)
      detail::xor_walk(pool, lead + 1, k - 1, base ^ pool[lead], add);
    return total;
  };
  if (workers <= 1) return run(0, 1);
  std::vector<std::int64_t> partial(workers, 0);
  {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back([&, w] { partial[w] = run(w, workers); });
  }
  return std::accumulate(partial.begin(), partial.end(), std::int64_t{0});
}

}  // namespace ssd
