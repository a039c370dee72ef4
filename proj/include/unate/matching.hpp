#pragma once

#include <cstdint>
#include <vector>

namespace unate {

/// Maximum bipartite matching by Hopcroft-Karp.
class BipartiteMatching {
 public:
  static constexpr std::uint32_t kFree = UINT32_MAX;

  BipartiteMatching(std::uint32_t left, std::uint32_t right);

  void add_edge(std::uint32_t u, std::uint32_t v);
  /// Runs to completion; returns the matching size.
  std::size_t solve();

  std::uint32_t mate_of_left(std::uint32_t u) const { return mate_left_[u]; }
  std::uint32_t mate_of_right(std::uint32_t v) const { return mate_right_[v]; }

 private:
  bool bfs();
  bool dfs(std::uint32_t u);

  std::uint32_t left_;
  std::uint32_t right_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> mate_left_;
  std::vector<std::uint32_t> mate_right_;
  std::vector<std::uint32_t> layer_;
  std::vector<std::size_t> cursor_;
};

}  // namespace unate
