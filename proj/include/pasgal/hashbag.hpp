#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <new>
#include <stdexcept>
#include <vector>

#include "pasgal/parallel.hpp"
#include "pasgal/random.hpp"
#include "pasgal/types.hpp"

namespace pasgal {

/// Concurrent multiset of vertex ids, the frontier container of every
/// frontier-based algorithm.
///
/// Storage is a sequence of open-addressing chunks with capacities c, 2c,
/// 4c, ... Inserts race into the active chunk with linear probing from a
/// random slot. Every 64th insert (by hash) bumps the chunk's sampled
/// counter; once the sampled occupancy crosses the fill threshold, or a probe
/// sequence runs too long, the next chunk is allocated and becomes active.
///
/// Usage alternates two phases. Insert phase: any number of concurrent
/// insert() calls. Pack phase: pack() and estimate_size() with exclusive
/// access. Duplicates are preserved.
template <VertexIdType V>
class HashBag {
 public:
  struct Options {
    std::size_t initial_capacity = 1024;  // rounded up to a power of two
    double fill_threshold = 0.75;
    unsigned sample_log2 = 6;  // one sampled increment per 2^sample_log2 inserts
    std::size_t max_probe = 96;
  };

  HashBag() : HashBag(Options{}) {}
  explicit HashBag(Options opt) : opt_(opt) {
    if (opt_.initial_capacity < 64) opt_.initial_capacity = 64;
    opt_.initial_capacity = std::bit_ceil(opt_.initial_capacity);
    if (opt_.max_probe == 0) opt_.max_probe = 1;
    allocate_chunk(0);
  }

  HashBag(const HashBag&) = delete;
  HashBag& operator=(const HashBag&) = delete;

  void insert(V v) {
    std::uint64_t h = hash_combine(next_salt(), static_cast<std::uint64_t>(v));
    bool sampled = (h >> (64 - opt_.sample_log2)) == 0;
    std::size_t k = cursor_.load(std::memory_order_acquire);
    if (!nonempty_.load(std::memory_order_relaxed)) nonempty_.store(true, std::memory_order_relaxed);
    for (;;) {
      Chunk& c = chunks_[k];
      V* slots = c.slots.load(std::memory_order_acquire);
      std::size_t mask = c.capacity - 1;
      std::size_t pos = static_cast<std::size_t>(h) & mask;
      for (std::size_t probe = 0; probe < opt_.max_probe; ++probe, pos = (pos + 1) & mask) {
        std::atomic_ref<V> slot(slots[pos]);
        V cur = slot.load(std::memory_order_relaxed);
        if (cur != kEmpty) continue;
        if (!slot.compare_exchange_strong(cur, v, std::memory_order_relaxed)) continue;
        if (sampled) {
          std::size_t count = c.sampled.fetch_add(1, std::memory_order_relaxed) + 1;
          if (static_cast<double>(count << opt_.sample_log2) > opt_.fill_threshold * static_cast<double>(c.capacity) &&
              cursor_.load(std::memory_order_relaxed) == k)
            grow(k);
        }
        return;
      }
      // Chunk congested: overflow into the next one.
      grow(k);
      ++k;
      h = splitmix64(h);
    }
  }

  /// Moves every element into `out` (order unspecified) and resets the bag.
  void pack_into(std::vector<V>& out) {
    std::size_t top = cursor_.load(std::memory_order_acquire);
    out.clear();
    if (!nonempty_.load(std::memory_order_relaxed)) return;
    std::size_t total_capacity = 0;
    for (std::size_t k = 0; k <= top; ++k) total_capacity += chunks_[k].capacity;
    if (total_capacity <= kSequentialPack) {
      for (std::size_t k = 0; k <= top; ++k) {
        V* slots = chunks_[k].slots.load(std::memory_order_relaxed);
        for (std::size_t i = 0; i < chunks_[k].capacity; ++i) {
          if (slots[i] != kEmpty) {
            out.push_back(slots[i]);
            slots[i] = kEmpty;
          }
        }
      }
    } else {
      pack_parallel(top, out);
    }
    reset(top);
  }

  std::vector<V> pack() {
    std::vector<V> out;
    pack_into(out);
    return out;
  }

  /// Approximate element count. Small chunks are counted exactly; larger ones
  /// are extrapolated from their sampled counters. Never exceeds capacity().
  std::size_t estimate_size() const {
    std::size_t top = cursor_.load(std::memory_order_acquire);
    std::size_t estimate = 0;
    for (std::size_t k = 0; k <= top; ++k) {
      const Chunk& c = chunks_[k];
      if (c.capacity <= kExactCountLimit) {
        const V* slots = c.slots.load(std::memory_order_relaxed);
        estimate += static_cast<std::size_t>(std::count_if(slots, slots + c.capacity, [](V x) { return x != kEmpty; }));
      } else {
        estimate += std::min(c.capacity, c.sampled.load(std::memory_order_relaxed) << opt_.sample_log2);
      }
    }
    return estimate;
  }

  /// False only if no insert happened since the last pack.
  bool maybe_nonempty() const { return nonempty_.load(std::memory_order_relaxed); }

  /// Slots currently allocated.
  std::size_t capacity() const {
    std::size_t total = 0;
    for (std::size_t k = 0; k <= cursor_.load(std::memory_order_acquire); ++k) total += chunks_[k].capacity;
    return total;
  }
  std::size_t peak_capacity() const { return peak_capacity_.load(std::memory_order_relaxed); }
  std::size_t active_chunks() const { return cursor_.load(std::memory_order_acquire) + 1; }

 private:
  static constexpr V kEmpty = kNoVertex<V>;
  static constexpr std::size_t kMaxChunks = 48;
  static constexpr std::size_t kSequentialPack = 1 << 14;
  static constexpr std::size_t kExactCountLimit = 4096;

  struct Chunk {
    std::atomic<V*> slots{nullptr};
    std::size_t capacity = 0;
    std::atomic<std::size_t> sampled{0};
  };

  static std::uint64_t next_salt() {
    static std::atomic<std::uint64_t> streams{0};
    thread_local std::uint64_t salt = splitmix64(streams.fetch_add(1, std::memory_order_relaxed));
    return salt += 0x9e3779b97f4a7c15ULL;
  }

  void allocate_chunk(std::size_t k) {
    std::size_t cap = opt_.initial_capacity << k;
    auto storage = std::make_unique<V[]>(cap);
    std::fill(storage.get(), storage.get() + cap, kEmpty);
    chunks_[k].capacity = cap;
    chunks_[k].sampled.store(0, std::memory_order_relaxed);
    chunks_[k].slots.store(storage.get(), std::memory_order_release);
    owned_[k] = std::move(storage);
    std::size_t allocated = 0;
    for (std::size_t i = 0; i <= k; ++i) allocated += chunks_[i].capacity;
    std::size_t peak = peak_capacity_.load(std::memory_order_relaxed);
    while (allocated > peak && !peak_capacity_.compare_exchange_weak(peak, allocated)) {
    }
  }

  // Ensures chunk k+1 exists and the cursor is past k.
  void grow(std::size_t k) {
    if (k + 1 >= kMaxChunks) throw std::bad_alloc();
    std::lock_guard lock(grow_mutex_);
    if (chunks_[k + 1].slots.load(std::memory_order_relaxed) == nullptr) allocate_chunk(k + 1);
    if (cursor_.load(std::memory_order_relaxed) < k + 1) cursor_.store(k + 1, std::memory_order_release);
  }

  void pack_parallel(std::size_t top, std::vector<V>& out) {
    constexpr std::size_t kBlock = 1 << 12;
    // Blocks never straddle chunks: every capacity is a multiple of kBlock or
    // smaller than it.
    struct Block {
      V* slots;
      std::size_t size;
    };
    std::vector<Block> blocks;
    for (std::size_t k = 0; k <= top; ++k) {
      V* slots = chunks_[k].slots.load(std::memory_order_relaxed);
      for (std::size_t i = 0; i < chunks_[k].capacity; i += kBlock)
        blocks.push_back({slots + i, std::min(kBlock, chunks_[k].capacity - i)});
    }
    std::vector<std::size_t> counts(blocks.size() + 1, 0);
    parallel_for(0, blocks.size(), [&](std::size_t b) {
      counts[b] = static_cast<std::size_t>(
          std::count_if(blocks[b].slots, blocks[b].slots + blocks[b].size, [](V x) { return x != kEmpty; }));
    }, 1);
    std::size_t total = exclusive_scan_inplace(std::span<std::size_t>(counts.data(), blocks.size()));
    out.resize(total);
    parallel_for(0, blocks.size(), [&](std::size_t b) {
      std::size_t pos = counts[b];
      for (std::size_t i = 0; i < blocks[b].size; ++i) {
        V& s = blocks[b].slots[i];
        if (s != kEmpty) {
          out[pos++] = s;
          s = kEmpty;
        }
      }
    }, 1);
  }

  // Drops every chunk past the first; the first is already cleared.
  void reset(std::size_t top) {
    for (std::size_t k = 1; k <= top; ++k) {
      chunks_[k].slots.store(nullptr, std::memory_order_relaxed);
      chunks_[k].capacity = 0;
      chunks_[k].sampled.store(0, std::memory_order_relaxed);
      owned_[k].reset();
    }
    chunks_[0].sampled.store(0, std::memory_order_relaxed);
    cursor_.store(0, std::memory_order_release);
    nonempty_.store(false, std::memory_order_relaxed);
  }

  Options opt_;
  std::array<Chunk, kMaxChunks> chunks_;
  std::array<std::unique_ptr<V[]>, kMaxChunks> owned_;
  std::atomic<std::size_t> cursor_{0};
  std::atomic<std::size_t> peak_capacity_{0};
  std::atomic<bool> nonempty_{false};
  std::mutex grow_mutex_;
};

}  // namespace pasgal
