#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "pasgal/graph.hpp"

namespace pasgal {

/// Malformed graph file. Carries the position of the offending token: a
/// 1-based line number for text formats (0 for binary) and a 0-based byte
/// offset for both.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line, std::size_t byte);

  std::size_t line() const { return line_; }
  std::size_t byte() const { return byte_; }

 private:
  std::size_t line_;
  std::size_t byte_;
};

// PBBS adjacency format:
//   AdjacencyGraph | WeightedAdjacencyGraph
//   n, m, n offsets, m targets[, m weights]
// one decimal token per line on output, any whitespace accepted on input.
// The file stores n offsets; offsets[n] = m is implied.
template <VertexIdType V>
Graph<V> parse_adj(std::string_view text, bool weighted);
template <VertexIdType V>
std::string format_adj(const Graph<V>& g);

template <VertexIdType V>
Graph<V> load_adj(const std::filesystem::path& path, bool weighted = false);
template <VertexIdType V>
void save_adj(const Graph<V>& g, const std::filesystem::path& path);

// GBBS uncompressed binary format, little-endian:
//   u64 n, u64 m, u64 size (= 24 + 8(n+1) + 4m),
//   (n+1) x u64 offsets, m x u32 targets
// The weighted variant (.wbin) appends m x f32 weights after the targets.
template <VertexIdType V>
Graph<V> parse_bin(std::span<const std::byte> data, bool weighted);
template <VertexIdType V>
std::string format_bin(const Graph<V>& g);

/// Loads `.bin`, or `.wbin` when `weighted`.
template <VertexIdType V>
Graph<V> load_bin(const std::filesystem::path& path, bool weighted = false);
/// Writes the weight block iff the graph is weighted.
template <VertexIdType V>
void save_bin(const Graph<V>& g, const std::filesystem::path& path);

/// Graph whose vertex id width was chosen from n at load time.
using AnyGraph = std::variant<Graph32, Graph64>;

/// Dispatches on the extension (.adj, .bin, .wbin). For .adj the header
/// decides whether weights are read.
AnyGraph load_graph(const std::filesystem::path& path);
void save_graph(const AnyGraph& g, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace pasgal
