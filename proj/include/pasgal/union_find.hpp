#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pasgal/parallel.hpp"
#include "pasgal/random.hpp"
#include "pasgal/types.hpp"

namespace pasgal {

/// Concurrent union-find with path halving and randomized linking: the root
/// with the lower (hash, id) priority is hooked under the other one, so the
/// parent relation stays acyclic under any interleaving.
template <VertexIdType V>
class UnionFind {
 public:
  explicit UnionFind(std::size_t n, std::uint64_t seed = 0) : parent_(n), seed_(seed) {
    parallel_for(0, n, [&](std::size_t i) { parent_[i] = static_cast<V>(i); });
  }

  V find(V x) {
    for (;;) {
      V p = atomic_load(parent_[x]);
      if (p == x) return x;
      V gp = atomic_load(parent_[p]);
      if (p == gp) return p;
      std::atomic_ref<V>(parent_[x]).compare_exchange_weak(p, gp, std::memory_order_relaxed);
      x = gp;
    }
  }

  /// Joins the sets of a and b. Returns the root that was hooked, or
  /// kNoVertex when both were already in one set.
  V unite(V a, V b) {
    for (;;) {
      V ra = find(a), rb = find(b);
      if (ra == rb) return kNoVertex<V>;
      if (outranks(ra, rb)) std::swap(ra, rb);
      V expected = ra;
      if (std::atomic_ref<V>(parent_[ra]).compare_exchange_strong(expected, rb, std::memory_order_relaxed))
        return ra;
    }
  }

  bool same(V a, V b) { return find(a) == find(b); }
  std::size_t size() const { return parent_.size(); }

 private:
  bool outranks(V a, V b) const {
    std::uint64_t ha = hash_combine(seed_, a), hb = hash_combine(seed_, b);
    return ha != hb ? ha > hb : a > b;
  }

  std::vector<V> parent_;
  std::uint64_t seed_;
};

}  // namespace pasgal
