#pragma once

// Heap accounting. Counters move only in binaries that link the
// pasgal_alloc_hook object library, which replaces global operator new and
// delete; elsewhere hook_installed() is false and every reading is zero.

#include <cstddef>
#include <cstdint>

namespace pasgal::memory {

bool hook_installed();

/// Live heap bytes allocated through operator new.
std::int64_t current_bytes();

/// High-water mark of current_bytes() since the last reset_peak().
std::int64_t peak_bytes();

/// Sets the peak to the current level.
void reset_peak();

std::uint64_t allocation_count();

/// Extra peak bytes above the level at construction.
class PeakScope {
 public:
  PeakScope() : base_(current_bytes()) { reset_peak(); }
  std::int64_t peak_delta() const { return peak_bytes() - base_; }
  std::int64_t base() const { return base_; }

 private:
  std::int64_t base_;
};

namespace detail {
void record_alloc(std::size_t bytes);
void record_free(std::size_t bytes);
void mark_installed();
}  // namespace detail

}  // namespace pasgal::memory
