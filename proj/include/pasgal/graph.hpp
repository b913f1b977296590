#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pasgal/parallel.hpp"
#include "pasgal/types.hpp"

namespace pasgal {

/// Raised when a CSR structure violates a graph invariant.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable CSR adjacency structure. Directed; undirected graphs store both
/// orientations of every edge and carry the `symmetric` flag.
template <VertexIdType V>
class Graph {
 public:
  using vertex_type = V;

  Graph() : offsets_(1, 0) {}

  /// Validates every invariant and throws GraphError on the first violation.
  static Graph from_csr(std::vector<EdgeId> offsets, std::vector<V> targets,
                        std::optional<std::vector<Weight>> weights = std::nullopt,
                        bool symmetric = false) {
    Graph g;
    g.offsets_ = std::move(offsets);
    g.targets_ = std::move(targets);
    g.weights_ = std::move(weights);
    g.symmetric_ = symmetric;
    g.validate();
    return g;
  }

  /// Builds without validation. For internal constructions whose output is
  /// valid by construction.
  static Graph from_csr_unchecked(std::vector<EdgeId> offsets, std::vector<V> targets,
                                  std::optional<std::vector<Weight>> weights = std::nullopt,
                                  bool symmetric = false) {
    Graph g;
    g.offsets_ = std::move(offsets);
    g.targets_ = std::move(targets);
    g.weights_ = std::move(weights);
    g.symmetric_ = symmetric;
    return g;
  }

  std::size_t num_vertices() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size(); }

  EdgeId begin_edge(V v) const { return offsets_[v]; }
  EdgeId end_edge(V v) const { return offsets_[static_cast<std::size_t>(v) + 1]; }
  std::size_t degree(V v) const { return static_cast<std::size_t>(end_edge(v) - begin_edge(v)); }

  std::span<const V> neighbors(V v) const {
    return {targets_.data() + begin_edge(v), degree(v)};
  }
  V target(EdgeId e) const { return targets_[e]; }

  bool weighted() const { return weights_.has_value(); }
  Weight weight(EdgeId e) const { return (*weights_)[e]; }

  std::span<const EdgeId> offsets() const { return offsets_; }
  std::span<const V> targets() const { return targets_; }
  std::span<const Weight> weights() const {
    return weights_ ? std::span<const Weight>(*weights_) : std::span<const Weight>();
  }

  /// True when the graph is known to contain (v,u) for every (u,v).
  bool symmetric() const { return symmetric_; }

  const Graph* transpose() const { return transpose_.get(); }
  void attach_transpose(Graph t) {
    if (t.num_vertices() != num_vertices() || t.num_edges() != num_edges())
      throw GraphError("transpose has mismatched size");
    t.transpose_.reset();
    transpose_ = std::make_shared<const Graph>(std::move(t));
  }

  /// Graph whose out-edges are this graph's in-edges, if available.
  const Graph* in_edges() const {
    if (symmetric_) return this;
    return transpose_.get();
  }

  /// Structural equality; the attached transpose is not compared.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.targets_ == b.targets_ && a.weights_ == b.weights_;
  }

  void validate() const {
    if (offsets_.empty()) throw GraphError("offsets array is empty");
    std::size_t n = offsets_.size() - 1;
    std::size_t m = targets_.size();
    if (offsets_.front() != 0) throw GraphError("offsets[0] must be 0");
    if (offsets_.back() != m)
      throw GraphError("offsets[n] = " + std::to_string(offsets_.back()) +
                       " does not match edge count " + std::to_string(m));
    if (static_cast<unsigned long long>(n) > static_cast<unsigned long long>(kNoVertex<V>))
      throw GraphError("vertex count exceeds id width");
    for (std::size_t v = 0; v < n; ++v)
      if (offsets_[v] > offsets_[v + 1])
        throw GraphError("offsets decrease at vertex " + std::to_string(v));
    for (std::size_t e = 0; e < m; ++e)
      if (static_cast<std::size_t>(targets_[e]) >= n)
        throw GraphError("edge " + std::to_string(e) + " targets " + std::to_string(targets_[e]) +
                         " >= n = " + std::to_string(n));
    if (weights_) {
      if (weights_->size() != m) throw GraphError("weight count does not match edge count");
      for (std::size_t e = 0; e < m; ++e)
        if (!((*weights_)[e] >= 0.0f) || std::isinf((*weights_)[e]))
          throw GraphError("edge " + std::to_string(e) + " has invalid weight");
    }
  }

 private:
  std::vector<EdgeId> offsets_;
  std::vector<V> targets_;
  std::optional<std::vector<Weight>> weights_;
  bool symmetric_ = false;
  std::shared_ptr<const Graph> transpose_;
};

using Graph32 = Graph<std::uint32_t>;
using Graph64 = Graph<std::uint64_t>;

}  // namespace pasgal
