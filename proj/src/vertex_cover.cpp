#include "unate/vertex_cover.hpp"

#include <algorithm>
#include <bitset>
#include <string>

#include "unate/errors.hpp"

namespace unate {

namespace {

using Set = std::bitset<VertexCoverLimits::kMaxVertices>;

template <class F>
void for_each_bit(const Set& s, F&& f) {
  for (std::size_t v = s._Find_first(); v < s.size(); v = s._Find_next(v)) f(static_cast<std::uint32_t>(v));
}

class Solver {
 public:
  Solver(std::uint32_t n, const std::vector<Edge>& edges, std::uint64_t budget)
      : n_(n), adj_(n), budget_(budget) {
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw ParameterError("edge endpoint out of range");
      if (u == v) throw ParameterError("self-loop in vertex cover input");
      adj_[u].set(v);
      adj_[v].set(u);
    }
  }

  std::vector<std::uint32_t> run() {
    Set alive;
    for (std::uint32_t v = 0; v < n_; ++v) alive.set(v);
    greedy_upper_bound(alive);
    search(alive, Set{}, 0);
    std::vector<std::uint32_t> out;
    for_each_bit(best_cover_, [&](std::uint32_t v) { out.push_back(v); });
    return out;
  }

 private:
  std::size_t degree(std::uint32_t v, const Set& alive) const { return (adj_[v] & alive).count(); }

  void greedy_upper_bound(Set alive) {
    Set cover;
    for (;;) {
      std::uint32_t pick = 0;
      std::size_t top = 0;
      for_each_bit(alive, [&](std::uint32_t v) {
        const auto deg = degree(v, alive);
        if (deg > top) {
          top = deg;
          pick = v;
        }
      });
      if (top == 0) break;
      cover.set(pick);
      alive.reset(pick);
    }
    best_ = cover.count();
    best_cover_ = cover;
  }

  // Vertices minus the number of cliques in a greedy clique partition: each
  // clique of size s needs s - 1 cover vertices.
  std::size_t clique_bound(const Set& alive) const {
    std::vector<Set> cliques;
    std::size_t count = 0;
    for_each_bit(alive, [&](std::uint32_t v) {
      ++count;
      for (auto& c : cliques) {
        if ((c & adj_[v]) == c) {
          c.set(v);
          return;
        }
      }
      Set fresh;
      fresh.set(v);
      cliques.push_back(fresh);
    });
    return count - cliques.size();
  }

  void search(Set alive, Set cover, std::size_t size) {
    if (++nodes_ > budget_) {
      throw CapacityError("vertex cover search exceeded its node budget; use the matching lower bound");
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v = alive._Find_first(); v < alive.size(); v = alive._Find_next(v)) {
        const Set nb = adj_[v] & alive;
        const auto deg = nb.count();
        if (deg == 0) {
          alive.reset(v);
        } else if (deg == 1) {
          const auto u = nb._Find_first();
          cover.set(u);
          alive.reset(u);
          alive.reset(v);
          ++size;
          changed = true;
        } else if (size + deg >= best_) {
          cover.set(v);
          alive.reset(v);
          ++size;
          changed = true;
        }
        if (size >= best_) return;
      }
    }
    if (alive.none()) {
      best_ = size;
      best_cover_ = cover;
      return;
    }
    if (size + clique_bound(alive) >= best_) return;

    std::uint32_t pick = 0;
    std::size_t top = 0;
    for_each_bit(alive, [&](std::uint32_t v) {
      const auto deg = degree(v, alive);
      if (deg > top) {
        top = deg;
        pick = v;
      }
    });

    {
      Set a = alive;
      Set c = cover;
      a.reset(pick);
      c.set(pick);
      search(a, c, size + 1);
    }
    {
      const Set nb = adj_[pick] & alive;
      Set a = alive & ~nb;
      a.reset(pick);
      search(a, cover | nb, size + nb.count());
    }
  }

  std::uint32_t n_;
  std::vector<Set> adj_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::size_t best_ = 0;
  Set best_cover_;
};

}  // namespace

std::vector<std::uint32_t> min_vertex_cover(std::uint32_t vertices, const std::vector<Edge>& edges,
                                            VertexCoverLimits limits) {
  if (vertices > VertexCoverLimits::kMaxVertices) {
    throw CapacityError("vertex cover limited to " + std::to_string(VertexCoverLimits::kMaxVertices) +
                        " points; use the matching lower bound");
  }
  return Solver(vertices, edges, limits.node_budget).run();
}

}  // namespace unate
