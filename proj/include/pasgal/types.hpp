#pragma once

#include <concepts>
#include <cstdint>
#include <limits>

namespace pasgal {

using EdgeId = std::uint64_t;
using Weight = float;

/// Vertex ids are dense indices in [0, n). Graphs are parameterized on the id
/// width; 32-bit ids are used whenever n fits.
template <typename V>
concept VertexIdType = std::same_as<V, std::uint32_t> || std::same_as<V, std::uint64_t>;

template <VertexIdType V>
inline constexpr V kNoVertex = std::numeric_limits<V>::max();

/// Hop distance sentinel for unreachable vertices.
template <VertexIdType V>
inline constexpr V kUnreached = std::numeric_limits<V>::max();

inline constexpr double kInfDistance = std::numeric_limits<double>::infinity();

}  // namespace pasgal
