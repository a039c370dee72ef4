#include "unate/matching.hpp"

#include <algorithm>
#include <queue>

#include "unate/errors.hpp"

namespace unate {

namespace {
constexpr std::uint32_t kInf = UINT32_MAX;
}

BipartiteMatching::BipartiteMatching(std::uint32_t left, std::uint32_t right)
    : left_(left), right_(right), adj_(left), mate_left_(left, kFree), mate_right_(right, kFree),
      layer_(left), cursor_(left) {}

void BipartiteMatching::add_edge(std::uint32_t u, std::uint32_t v) {
  if (u >= left_ || v >= right_) throw ParameterError("matching edge out of range");
  adj_[u].push_back(v);
}

bool BipartiteMatching::bfs() {
  std::queue<std::uint32_t> q;
  bool found = false;
  for (std::uint32_t u = 0; u < left_; ++u) {
    if (mate_left_[u] == kFree) {
      layer_[u] = 0;
      q.push(u);
    } else {
      layer_[u] = kInf;
    }
  }
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    for (auto v : adj_[u]) {
      const auto w = mate_right_[v];
      if (w == kFree) {
        found = true;
      } else if (layer_[w] == kInf) {
        layer_[w] = layer_[u] + 1;
        q.push(w);
      }
    }
  }
  return found;
}

// Iterative augmenting-path search; recursion depth would reach the path
// length, which is unbounded on large edge graphs.
bool BipartiteMatching::dfs(std::uint32_t root) {
  std::vector<std::uint32_t> stack{root};
  while (!stack.empty()) {
    const auto u = stack.back();
    if (cursor_[u] == adj_[u].size()) {
      layer_[u] = kInf;
      stack.pop_back();
      continue;
    }
    const auto v = adj_[u][cursor_[u]];
    const auto w = mate_right_[v];
    if (w == kFree) {
      // Flip the path: each stacked vertex takes the edge at its cursor.
      for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
        const auto x = *it;
        const auto y = adj_[x][cursor_[x]];
        mate_left_[x] = y;
        mate_right_[y] = x;
      }
      return true;
    }
    if (layer_[w] == layer_[u] + 1) {
      stack.push_back(w);
    } else {
      ++cursor_[u];
    }
  }
  return false;
}

std::size_t BipartiteMatching::solve() {
  std::size_t size = 0;
  for (auto m : mate_left_) size += m != kFree;
  while (bfs()) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    for (std::uint32_t u = 0; u < left_; ++u) {
      if (mate_left_[u] == kFree && dfs(u)) ++size;
    }
  }
  return size;
}

}  // namespace unate
