#pragma once

#include <utility>

#include "unate/grid.hpp"
#include "unate/rng.hpp"

namespace unate {

/// Ordered i-pair by linear index; `lower` has the smaller i-th coordinate.
struct IndexPair {
  Index lower;
  Index upper;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Uniform i-edge of the hypercube {0,1}^d (dimension i is 0-indexed).
IndexPair sample_edge_index(const GridShape& shape, std::size_t i, Rng& rng);

/// Uniform unordered pair of distinct points on a uniform i-line, lower first.
IndexPair sample_pair_index(const GridShape& shape, std::size_t i, Rng& rng);

std::pair<Point, Point> sample_i_edge(const GridShape& shape, std::size_t i, Rng& rng);
std::pair<Point, Point> sample_i_pair(const GridShape& shape, std::size_t i, Rng& rng);

/// Insert a zero bit at position i of u (hypercube edge bases).
constexpr Index insert_zero_bit(Index u, std::size_t i) noexcept {
  const Index low_mask = (Index{1} << i) - 1;
  return (u & low_mask) | ((u & ~low_mask) << 1);
}

}  // namespace unate
