#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace pasgal {

/// Renumbers labels by order of first occurrence, so two labelings of the
/// same partition become identical arrays.
template <typename T>
std::vector<std::uint64_t> canonical_labels(std::span<const T> labels) {
  std::unordered_map<T, std::uint64_t> ids;
  ids.reserve(labels.size() / 4 + 16);
  std::vector<std::uint64_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(labels[i], ids.size());
    out[i] = it->second;
  }
  return out;
}

template <typename T>
std::vector<std::uint64_t> canonical_labels(const std::vector<T>& labels) {
  return canonical_labels(std::span<const T>(labels));
}

template <typename A, typename B>
bool same_partition(const std::vector<A>& a, const std::vector<B>& b) {
  return a.size() == b.size() && canonical_labels(a) == canonical_labels(b);
}

template <typename T>
std::size_t count_distinct(const std::vector<T>& labels) {
  auto c = canonical_labels(labels);
  std::uint64_t k = 0;
  for (auto x : c) k = std::max(k, x + 1);
  return static_cast<std::size_t>(k);
}

}  // namespace pasgal
