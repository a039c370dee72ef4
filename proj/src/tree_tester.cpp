#include "unate/tree_tester.hpp"

#include <array>

namespace unate {

namespace {

// Paths on 32-bit positions have at most 32 nodes.
using PathBuffer = std::array<Coord, 33>;

std::size_t search_path_into(std::uint32_t n, Coord x, PathBuffer& path) {
  if (n == 0 || x >= n) throw ParameterError("search target outside [0, n)");
  std::size_t len = 0;
  std::int64_t lo = 0;
  std::int64_t hi = static_cast<std::int64_t>(n) - 1;
  for (;;) {
    const std::int64_t mid = (lo + hi) / 2;
    path[len++] = static_cast<Coord>(mid);
    if (x == mid) return len;
    if (x < mid) {
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
}

}  // namespace

std::vector<Coord> tree_search_path(std::uint32_t n, Coord x) {
  PathBuffer buf;
  const std::size_t len = search_path_into(n, x, buf);
  return {buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(len)};
}

std::size_t tree_path_length(std::uint32_t n, Coord x) {
  PathBuffer buf;
  return search_path_into(n, x, buf);
}

TreeOutcome tree_outcome(std::span<const Coord> path, std::span<const Value> values) {
  TreeOutcome out;
  out.queries = path.size();
  for (std::size_t a = 0; a < path.size(); ++a) {
    for (std::size_t b = a + 1; b < path.size(); ++b) {
      // Orient the pair by position, not by visiting order.
      Coord u = path[a];
      Coord v = path[b];
      Value hu = values[a];
      Value hv = values[b];
      if (u > v) {
        std::swap(u, v);
        std::swap(hu, hv);
      }
      if (hu < hv && !out.increasing) {
        out.increasing = LinePair{u, v};
        out.dir.up = true;
      } else if (hu > hv && !out.decreasing) {
        out.decreasing = LinePair{u, v};
        out.dir.down = true;
      }
    }
  }
  return out;
}

TreeOutcome tree_tester_at(LineView line, Coord x) {
  PathBuffer path;
  const std::size_t len = search_path_into(line.size(), x, path);
  std::array<Value, 33> values{};
  for (std::size_t k = 0; k < len; ++k) values[k] = line.query(path[k]);
  return tree_outcome(std::span<const Coord>(path.data(), len),
                      std::span<const Value>(values.data(), len));
}

TreeOutcome tree_tester(LineView line, Rng& rng) {
  return tree_tester_at(line, static_cast<Coord>(rng.below(line.size())));
}

}  // namespace unate
