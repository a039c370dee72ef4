#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace unate {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

struct VertexCoverLimits {
  static constexpr std::uint32_t kMaxVertices = 256;
  /// Search nodes before giving up with CapacityError.
  std::uint64_t node_budget = 50'000'000;
};

/// Exact minimum vertex cover of a simple graph by branch and bound.
///
/// Reductions: isolated vertices drop out, a degree-1 vertex puts its neighbour
/// in the cover, and a vertex whose degree reaches the remaining budget must be
/// in the cover. Pruning uses a greedy clique-partition bound. Returns the cover
/// as sorted vertex ids. Throws CapacityError beyond kMaxVertices or the node
/// budget.
std::vector<std::uint32_t> min_vertex_cover(std::uint32_t vertices, const std::vector<Edge>& edges,
                                            VertexCoverLimits limits = {});

}  // namespace unate
