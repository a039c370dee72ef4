#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "unate/oracle.hpp"
#include "unate/rng.hpp"

namespace unate {

/// Positions visited by a binary search for x in {0, ..., n-1}, root first.
///
/// The search tree is the balanced BST with root floor((lo+hi)/2) on the
/// inclusive range [0, n-1]; the path descends left when x < mid and right
/// when x > mid, and ends at x. Its length is at most floor(log2 n) + 1.
std::vector<Coord> tree_search_path(std::uint32_t n, Coord x);

/// |tree_search_path(n, x)| without allocating.
std::size_t tree_path_length(std::uint32_t n, Coord x);

/// Positions (u, v) with u < v on a line.
using LinePair = std::pair<Coord, Coord>;

struct TreeOutcome {
  DirectionSet dir;
  std::optional<LinePair> increasing;
  std::optional<LinePair> decreasing;
  std::uint64_t queries = 0;
};

/// Directions observed on a set of positions. values[k] is the value at
/// path[k]; positions may come in any order.
TreeOutcome tree_outcome(std::span<const Coord> path, std::span<const Value> values);

/// Run the tree tester with search target x. Queries exactly tree_search_path(n, x).
TreeOutcome tree_tester_at(LineView line, Coord x);

/// The tree tester: picks x uniformly from the line and searches for it.
TreeOutcome tree_tester(LineView line, Rng& rng);

}  // namespace unate
