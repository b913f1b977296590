#include "pasgal/memory.hpp"

#include <atomic>

namespace pasgal::memory {
namespace {

std::atomic<bool> installed{false};
std::atomic<std::int64_t> current{0};
std::atomic<std::int64_t> peak{0};
std::atomic<std::uint64_t> allocations{0};

}  // namespace

bool hook_installed() { return installed.load(std::memory_order_relaxed); }
std::int64_t current_bytes() { return current.load(std::memory_order_relaxed); }
std::int64_t peak_bytes() { return peak.load(std::memory_order_relaxed); }
std::uint64_t allocation_count() { return allocations.load(std::memory_order_relaxed); }

void reset_peak() { peak.store(current.load(std::memory_order_relaxed), std::memory_order_relaxed); }

namespace detail {

void record_alloc(std::size_t bytes) {
  allocations.fetch_add(1, std::memory_order_relaxed);
  std::int64_t now = current.fetch_add(static_cast<std::int64_t>(bytes), std::memory_order_relaxed) +
                     static_cast<std::int64_t>(bytes);
  std::int64_t seen = peak.load(std::memory_order_relaxed);
  while (now > seen && !peak.compare_exchange_weak(seen, now, std::memory_order_relaxed)) {
  }
}

void record_free(std::size_t bytes) {
  current.fetch_sub(static_cast<std::int64_t>(bytes), std::memory_order_relaxed);
}

void mark_installed() { installed.store(true, std::memory_order_relaxed); }

}  // namespace detail
}  // namespace pasgal::memory
