#pragma once

// Fork-join layer used by every algorithm. Backed by oneTBB's work-stealing
// scheduler; nothing outside this header names TBB directly.

#include <oneapi/tbb/blocked_range.h>
#include <oneapi/tbb/global_control.h>
#include <oneapi/tbb/parallel_for.h>
#include <oneapi/tbb/parallel_invoke.h>
#include <oneapi/tbb/parallel_reduce.h>
#include <oneapi/tbb/task_arena.h>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace pasgal {

inline int num_workers() { return oneapi::tbb::this_task_arena::max_concurrency(); }

/// Index of the calling worker in [0, num_workers()).
inline int worker_id() {
  int id = oneapi::tbb::this_task_arena::current_thread_index();
  return id < 0 ? 0 : id;
}

/// Runs `fn` on a pool of exactly `threads` workers. This is how thread-count
/// sweeps re-initialize the pool.
template <typename F>
decltype(auto) with_workers(int threads, F&& fn) {
  oneapi::tbb::global_control limit(oneapi::tbb::global_control::max_allowed_parallelism,
                                    static_cast<std::size_t>(threads));
  oneapi::tbb::task_arena arena(threads);
  return arena.execute(std::forward<F>(fn));
}

/// Calls f(i) for every i in [lo, hi). `grain` = 0 lets the scheduler pick.
template <typename F>
void parallel_for(std::size_t lo, std::size_t hi, F&& f, std::size_t grain = 0) {
  if (hi <= lo) return;
  if (hi - lo == 1) {
    f(lo);
    return;
  }
  auto body = [&f](const oneapi::tbb::blocked_range<std::size_t>& r) {
    for (std::size_t i = r.begin(); i != r.end(); ++i) f(i);
  };
  if (grain == 0) {
    oneapi::tbb::parallel_for(oneapi::tbb::blocked_range<std::size_t>(lo, hi), body);
  } else {
    oneapi::tbb::parallel_for(oneapi::tbb::blocked_range<std::size_t>(lo, hi, grain), body,
                              oneapi::tbb::simple_partitioner());
  }
}

/// Splits [0, n) into contiguous blocks and calls f(block_index, begin, end).
template <typename F>
std::size_t parallel_blocks(std::size_t n, std::size_t block_size, F&& f) {
  std::size_t blocks = (n + block_size - 1) / block_size;
  parallel_for(0, blocks, [&](std::size_t b) {
    std::size_t begin = b * block_size;
    f(b, begin, std::min(n, begin + block_size));
  }, 1);
  return blocks;
}

template <typename F1, typename F2>
void par_do(F1&& left, F2&& right) {
  oneapi::tbb::parallel_invoke(std::forward<F1>(left), std::forward<F2>(right));
}

template <typename T, typename Map, typename Combine>
T parallel_reduce(std::size_t lo, std::size_t hi, T identity, Map&& map, Combine&& combine) {
  if (hi <= lo) return identity;
  return oneapi::tbb::parallel_reduce(
      oneapi::tbb::blocked_range<std::size_t>(lo, hi), identity,
      [&](const oneapi::tbb::blocked_range<std::size_t>& r, T acc) {
        for (std::size_t i = r.begin(); i != r.end(); ++i) acc = combine(acc, map(i));
        return acc;
      },
      combine);
}

template <typename Map>
std::size_t parallel_count(std::size_t lo, std::size_t hi, Map&& pred) {
  return parallel_reduce<std::size_t>(
      lo, hi, 0, [&](std::size_t i) -> std::size_t { return pred(i) ? 1 : 0; },
      std::plus<std::size_t>());
}

/// In-place exclusive prefix sum; returns the total.
template <typename T>
T exclusive_scan_inplace(std::span<T> values) {
  constexpr std::size_t kBlock = 1 << 14;
  std::size_t n = values.size();
  if (n <= kBlock) {
    T sum{};
    for (auto& v : values) {
      T next = sum + v;
      v = sum;
      sum = next;
    }
    return sum;
  }
  std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<T> partial(blocks);
  parallel_blocks(n, kBlock, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    T sum{};
    for (std::size_t i = lo; i < hi; ++i) sum += values[i];
    partial[b] = sum;
  });
  T total{};
  for (auto& p : partial) {
    T next = total + p;
    p = total;
    total = next;
  }
  parallel_blocks(n, kBlock, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    T sum = partial[b];
    for (std::size_t i = lo; i < hi; ++i) {
      T next = sum + values[i];
      values[i] = sum;
      sum = next;
    }
  });
  return total;
}

/// Dense parallel filter: indices i in [0, n) with pred(i), in increasing order.
template <typename T, typename Pred, typename Get>
std::vector<T> parallel_pack_index(std::size_t n, Pred&& pred, Get&& get) {
  constexpr std::size_t kBlock = 1 << 13;
  std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<std::size_t> counts(blocks + 1, 0);
  parallel_blocks(n, kBlock, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    std::size_t c = 0;
    for (std::size_t i = lo; i < hi; ++i) c += pred(i) ? 1 : 0;
    counts[b] = c;
  });
  std::size_t total = exclusive_scan_inplace(std::span<std::size_t>(counts.data(), blocks));
  std::vector<T> out(total);
  parallel_blocks(n, kBlock, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    std::size_t pos = counts[b];
    for (std::size_t i = lo; i < hi; ++i)
      if (pred(i)) out[pos++] = get(i);
  });
  return out;
}

template <typename T>
void parallel_fill(std::span<T> values, const T& value) {
  parallel_blocks(values.size(), 1 << 15, [&](std::size_t, std::size_t lo, std::size_t hi) {
    std::fill(values.begin() + lo, values.begin() + hi, value);
  });
}

/// Write-min on a plain slot: stores `value` if it is smaller than the current
/// content. Returns true iff this call performed a strict decrease.
template <typename T>
bool write_min(T& slot, T value) {
  std::atomic_ref<T> ref(slot);
  T current = ref.load(std::memory_order_relaxed);
  while (value < current) {
    if (ref.compare_exchange_weak(current, value, std::memory_order_relaxed)) return true;
  }
  return false;
}

template <typename T>
bool write_max(T& slot, T value) {
  std::atomic_ref<T> ref(slot);
  T current = ref.load(std::memory_order_relaxed);
  while (current < value) {
    if (ref.compare_exchange_weak(current, value, std::memory_order_relaxed)) return true;
  }
  return false;
}

template <typename T>
T atomic_load(const T& slot) {
  return std::atomic_ref<T>(const_cast<T&>(slot)).load(std::memory_order_relaxed);
}

template <typename T>
void atomic_store(T& slot, T value) {
  std::atomic_ref<T>(slot).store(value, std::memory_order_relaxed);
}

}  // namespace pasgal
