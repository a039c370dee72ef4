#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <functional>

#include "unate/errors.hpp"
#include "unate/generators.hpp"
#include "unate/groundtruth.hpp"
#include "unate/matching.hpp"
#include "unate/vertex_cover.hpp"

using namespace unate;

namespace {

Function xor2() { return make_dense(GridShape(2, 2), {0, 1, 1, 0}); }

Function random_dense(const GridShape& s, Rng& rng, std::uint64_t range) {
  std::vector<Value> t(s.size());
  for (auto& v : t) v = static_cast<Value>(rng.below(range));
  return make_dense(s, t);
}

bool leq_b(const GridShape& s, Index x, Index y, const Orientation& b) {
  for (std::size_t c = 0; c < s.d(); ++c) {
    const Coord xc = s.coord(x, c);
    const Coord yc = s.coord(y, c);
    if (b[c] ? xc < yc : xc > yc) return false;
  }
  return true;
}

std::size_t lnds_quadratic(const std::vector<Value>& h) {
  std::vector<std::size_t> best(h.size(), 1);
  std::size_t top = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (h[j] <= h[i]) best[i] = std::max(best[i], best[j] + 1);
    }
    top = std::max(top, best[i]);
  }
  return top;
}

// Smallest number of points whose change yields a b-monotone function. For a
// candidate change set S the repair f'(z) = max{f(x) : x kept, x <=_b z} (or
// the global minimum) is built and checked directly.
std::size_t brute_force_repair(const Function& f, const Orientation& b) {
  const GridShape& s = f.shape();
  const auto N = static_cast<std::uint32_t>(s.size());
  if (N > 16) throw std::logic_error("brute force limited to 16 points");
  std::vector<Value> v(N);
  for (std::uint32_t x = 0; x < N; ++x) v[x] = f(x);
  const Value floor_value = *std::min_element(v.begin(), v.end());
  std::vector<std::uint32_t> masks(std::size_t{1} << N);
  for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t c) { return std::popcount(a) < std::popcount(c); });
  for (std::uint32_t changed : masks) {
    std::vector<Value> repaired(N);
    for (std::uint32_t z = 0; z < N; ++z) {
      Value best = floor_value;
      for (std::uint32_t x = 0; x < N; ++x) {
        if (!((changed >> x) & 1u) && leq_b(s, x, z, b)) best = std::max(best, v[x]);
      }
      repaired[z] = best;
    }
    bool ok = true;
    for (std::uint32_t z = 0; z < N && ok; ++z) {
      if (!((changed >> z) & 1u) && repaired[z] != v[z]) ok = false;
      for (std::uint32_t y = 0; y < N && ok; ++y) {
        if (leq_b(s, z, y, b) && repaired[z] > repaired[y]) ok = false;
      }
    }
    if (ok) return static_cast<std::size_t>(std::popcount(changed));
  }
  return N;
}

// Violated pairs form a strict partial order, so a minimum vertex cover is a
// maximum matching between "out" and "in" copies of the points (Dilworth).
std::size_t dilworth_cover(const Function& f, const Orientation& b) {
  const GridShape& s = f.shape();
  const auto N = static_cast<std::uint32_t>(s.size());
  std::vector<std::vector<std::uint32_t>> adj(N);
  for (std::uint32_t x = 0; x < N; ++x) {
    for (std::uint32_t y = 0; y < N; ++y) {
      if (x != y && leq_b(s, x, y, b) && f(x) > f(y)) adj[x].push_back(y);
    }
  }
  std::vector<int> mate(N, -1);
  std::size_t size = 0;
  for (std::uint32_t u = 0; u < N; ++u) {
    std::vector<bool> seen(N, false);
    std::function<bool(std::uint32_t)> augment = [&](std::uint32_t a) {
      for (auto v : adj[a]) {
        if (seen[v]) continue;
        seen[v] = true;
        if (mate[v] < 0 || augment(static_cast<std::uint32_t>(mate[v]))) {
          mate[v] = static_cast<int>(a);
          return true;
        }
      }
      return false;
    };
    size += augment(u);
  }
  return size;
}

Orientation mask_orientation(std::uint32_t d, std::uint32_t mask) {
  Orientation b(d);
  for (std::uint32_t c = 0; c < d; ++c) b[c] = ((mask >> c) & 1u) != 0;
  return b;
}

// All weak orders on n positions, as value vectors over {0..k-1} hitting every value.
void for_each_order_pattern(std::size_t n, const std::function<void(const std::vector<Value>&)>& visit) {
  // Restricted growth strings enumerate set partitions; every ranking of the
  // blocks turns a partition into a weak order.
  std::vector<Value> base;
  std::function<void(std::size_t, Value)> partitions = [&](std::size_t pos, Value blocks) {
    if (pos == n) {
      std::vector<Value> rank(static_cast<std::size_t>(blocks));
      for (Value i = 0; i < blocks; ++i) rank[static_cast<std::size_t>(i)] = i;
      do {
        std::vector<Value> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = rank[static_cast<std::size_t>(base[i])];
        visit(out);
      } while (std::next_permutation(rank.begin(), rank.end()));
      return;
    }
    for (Value v = 0; v <= blocks; ++v) {
      base[pos] = v;
      partitions(pos + 1, std::max(blocks, v + 1));
    }
  };
  base.assign(n, 0);
  partitions(0, 0);
}

}  // namespace

TEST(LineDistance, Examples) {
  EXPECT_EQ(dist_line_monotone(std::vector<Value>{1, 2, 2, 5}), Rational(0));
  EXPECT_EQ(dist_line_monotone(std::vector<Value>{4, 3, 2, 1}), Rational(3, 4));
  EXPECT_EQ(dist_line_monotone(std::vector<Value>{1, 0, 3, 2}), Rational(1, 2));
  EXPECT_EQ(dist_line_antimonotone(std::vector<Value>{4, 3, 2, 1}), Rational(0));
  EXPECT_EQ(dist_line_antimonotone(std::vector<Value>{1, 2}), Rational(1, 2));
  EXPECT_THROW(dist_line_monotone(std::vector<Value>{}), ParameterError);
}

TEST(LineDistance, AgreesWithQuadraticLnds) {
  Rng rng(1);
  for (int t = 0; t < 2000; ++t) {
    std::vector<Value> h(1 + rng.below(40));
    for (auto& v : h) v = static_cast<Value>(rng.below(6));
    EXPECT_EQ(longest_nondecreasing(h), lnds_quadratic(h));
  }
}

TEST(LineDistance, AgreesWithRepairSearch) {
  Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::uint32_t>(2 + rng.below(7));
    const Function h = random_dense(GridShape(n, 1), rng, 4);
    std::vector<Value> values(h.table().begin(), h.table().end());
    EXPECT_EQ(dist_line_monotone(values), Rational(static_cast<std::int64_t>(brute_force_repair(h, {false})), n));
    EXPECT_EQ(dist_line_antimonotone(values), Rational(static_cast<std::int64_t>(brute_force_repair(h, {true})), n));
  }
}

TEST(IsUnate, Examples) {
  EXPECT_TRUE(is_unate_exact(make_dense(GridShape(3, 2), std::vector<Value>(9, 1))).unate);
  const auto x = is_unate_exact(xor2());
  ASSERT_FALSE(x.unate);
  ASSERT_TRUE(x.witness);
  EXPECT_TRUE(verify_witness(xor2(), *x.witness));
  const auto only1 = is_unate_exact(make_dense(GridShape(2, 2), {0, 1, 0, 1}));
  EXPECT_TRUE(only1.unate);
}

TEST(IsUnate, HypergridWitnessVerifies) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const Function f = random_dense(GridShape(4, 3), rng, 3);
    const auto r = is_unate_exact(f);
    if (!r.unate) EXPECT_TRUE(verify_witness(f, *r.witness));
  }
}

TEST(IsUnate, Capacity) {
  const Function f = make_dense(GridShape(2, 5), std::vector<Value>(32, 0));
  EXPECT_THROW(is_unate_exact(f, 16), CapacityError);
}

TEST(VertexCover, SmallGraphs) {
  EXPECT_TRUE(min_vertex_cover(3, {}).empty());
  EXPECT_EQ(min_vertex_cover(2, {{0, 1}}).size(), 1u);
  EXPECT_EQ(min_vertex_cover(3, {{0, 1}, {1, 2}, {0, 2}}).size(), 2u);
  EXPECT_EQ(min_vertex_cover(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}), std::vector<std::uint32_t>({0}));
  EXPECT_THROW(min_vertex_cover(300, {}), CapacityError);
  EXPECT_THROW(min_vertex_cover(3, {{1, 1}}), ParameterError);
}

TEST(VertexCover, MatchesSubsetEnumeration) {
  Rng rng(4);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::uint32_t>(1 + rng.below(12));
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = u + 1; v < n; ++v) {
        if (rng.below(100) < 35) edges.emplace_back(u, v);
      }
    }
    std::size_t best = n;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      bool cover = true;
      for (auto [u, v] : edges) cover &= (((m >> u) | (m >> v)) & 1u) != 0;
      if (cover) best = std::min<std::size_t>(best, static_cast<std::size_t>(std::popcount(m)));
    }
    const auto got = min_vertex_cover(n, edges);
    EXPECT_EQ(got.size(), best);
    for (auto [u, v] : edges) {
      EXPECT_TRUE(std::binary_search(got.begin(), got.end(), u) || std::binary_search(got.begin(), got.end(), v));
    }
  }
}

TEST(Matching, PerfectAndDeficient) {
  BipartiteMatching m(3, 3);
  m.add_edge(0, 0);
  m.add_edge(0, 1);
  m.add_edge(1, 0);
  m.add_edge(2, 2);
  EXPECT_EQ(m.solve(), 3u);
  BipartiteMatching star(3, 1);
  for (std::uint32_t u = 0; u < 3; ++u) star.add_edge(u, 0);
  EXPECT_EQ(star.solve(), 1u);
}

TEST(BMonotoneDistance, Examples) {
  EXPECT_EQ(dist_b_monotone_exact(xor2(), {false, false}).value, Rational(1, 4));
  const auto down = make_dense(GridShape(4, 1), {4, 3, 2, 1});
  EXPECT_EQ(dist_b_monotone_exact(down, {false}).value, Rational(3, 4));
  EXPECT_EQ(dist_b_monotone_exact(down, {true}).value, Rational(0));
  EXPECT_THROW(dist_b_monotone_exact(xor2(), {false}), ParameterError);
}

TEST(BMonotoneDistance, AgreesWithRepairSearch) {
  Rng rng(5);
  const std::vector<GridShape> shapes{GridShape(2, 2), GridShape(2, 3), GridShape(2, 4), GridShape(3, 2), GridShape(4, 2)};
  for (const auto& s : shapes) {
    for (int t = 0; t < 12; ++t) {
      const Function f = random_dense(s, rng, 4);
      const Orientation b = mask_orientation(s.d(), static_cast<std::uint32_t>(rng.below(1u << s.d())));
      const auto cert = dist_b_monotone_exact(f, b);
      EXPECT_EQ(cert.value, Rational(static_cast<std::int64_t>(brute_force_repair(f, b)), static_cast<std::int64_t>(s.size())));
    }
  }
}

TEST(BMonotoneDistance, AgreesWithDilworth) {
  Rng rng(6);
  const std::vector<GridShape> shapes{GridShape(4, 3), GridShape(2, 6), GridShape(8, 2), GridShape(3, 4)};
  for (const auto& s : shapes) {
    for (int t = 0; t < 8; ++t) {
      const Function f = random_dense(s, rng, 6);
      const Orientation b = mask_orientation(s.d(), static_cast<std::uint32_t>(rng.below(1u << s.d())));
      const auto cert = dist_b_monotone_exact(f, b);
      EXPECT_EQ(cert.value, Rational(static_cast<std::int64_t>(dilworth_cover(f, b)), static_cast<std::int64_t>(s.size())));
      EXPECT_EQ(cert.kind, CertificateKind::Exact);
    }
  }
}

TEST(BMonotoneDistance, Capacity) {
  const Function f = make_dense(GridShape(2, 9), std::vector<Value>(512, 0));
  EXPECT_THROW(dist_b_monotone_exact(f, Orientation(9, false)), CapacityError);
  EXPECT_THROW(dist_unate_exact(f), CapacityError);
}

TEST(UnateDistance, Examples) {
  EXPECT_EQ(dist_unate_exact(xor2()).value, Rational(1, 4));
  Rng rng(7);
  const Function u = gen_b_monotone(GridShape(3, 3), random_orientation(3, rng), rng);
  EXPECT_EQ(dist_unate_exact(u).value, Rational(0));
  GridLiftParams p;
  p.n = 4;
  p.d = 1;
  p.eps = 0.25;
  EXPECT_GE(dist_unate_exact(lb_family_member(p)).value, Rational(1, 4));
}

TEST(UnateDistance, EqualsRepairSearchOverAllOrientations) {
  Rng rng(8);
  for (const auto& s : {GridShape(2, 2), GridShape(2, 3), GridShape(4, 2), GridShape(2, 4)}) {
    for (int t = 0; t < 10; ++t) {
      const Function f = random_dense(s, rng, 4);
      std::size_t best = s.size();
      for (std::uint32_t m = 0; m < (1u << s.d()); ++m) best = std::min(best, brute_force_repair(f, mask_orientation(s.d(), m)));
      const auto cert = dist_unate_exact(f);
      EXPECT_EQ(cert.value, Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(s.size())));
      ASSERT_TRUE(cert.orientation);
      EXPECT_EQ(dist_b_monotone_exact(f, *cert.orientation).value, cert.value);
    }
  }
}

TEST(UnateDistance, ZeroIffUnate) {
  Rng rng(9);
  for (int t = 0; t < 150; ++t) {
    const GridShape s = t % 2 ? GridShape(2, 3) : GridShape(3, 2);
    const Function f = random_dense(s, rng, 2 + t % 3);
    EXPECT_EQ(dist_unate_exact(f).value == Rational(0), is_unate_exact(f).unate);
  }
}

TEST(UnateDistance, PsiLiftPreservesDistance) {
  Rng rng(10);
  for (std::uint32_t d : {1u, 2u, 3u}) {
    for (int t = 0; t < 6; ++t) {
      const Function f = random_dense(GridShape::hypercube(d), rng, 4);
      const Function g = lift_hypercube_to_hypergrid(f, 4);
      EXPECT_EQ(dist_unate_exact(f).value, dist_unate_exact(g).value);
    }
  }
}

TEST(MatchingBound, Examples) {
  EXPECT_EQ(dist_unate_matching_lb(xor2()).value, Rational(1, 4));
  Rng rng(11);
  const Function u = gen_b_monotone(GridShape::hypercube(5), random_orientation(5, rng), rng);
  EXPECT_EQ(dist_unate_matching_lb(u).value, Rational(0));
  EXPECT_THROW(dist_unate_matching_lb(make_dense(GridShape(3, 1), {0, 1, 2})), ParameterError);
}

TEST(MatchingBound, NeverExceedsExact) {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const auto d = static_cast<std::uint32_t>(2 + rng.below(4));
    const Function f = random_dense(GridShape::hypercube(d), rng, 3);
    const auto lb = dist_unate_matching_lb(f);
    EXPECT_EQ(lb.kind, CertificateKind::LowerBound);
    EXPECT_LE(lb.value, dist_unate_exact(f).value);
  }
}

TEST(MatchingBound, WitnessIsAMatchingOfViolatedEdges) {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    const Function f = random_dense(GridShape::hypercube(6), rng, 3);
    const auto lb = dist_unate_matching_lb(f);
    ASSERT_TRUE(lb.orientation);
    const Orientation& b = *lb.orientation;
    ASSERT_EQ(lb.witness.size() % 2, 0u);
    EXPECT_EQ(Rational(static_cast<std::int64_t>(lb.witness.size() / 2), 64), lb.value);
    std::vector<bool> used(64, false);
    for (std::size_t k = 0; k < lb.witness.size(); k += 2) {
      const Index x = lb.witness[k];
      const Index y = lb.witness[k + 1];
      ASSERT_EQ(std::popcount(x ^ y), 1);
      EXPECT_FALSE(used[x] || used[y]);
      used[x] = used[y] = true;
      const Index lo = std::min(x, y);
      const Index hi = std::max(x, y);
      const auto c = static_cast<std::size_t>(std::countr_zero(lo ^ hi));
      EXPECT_TRUE(b[c] ? f(lo) < f(hi) : f(lo) > f(hi));
    }
  }
}

TEST(MatchingBound, MixedDimensionLimit) {
  Rng rng(14);
  const Function f = random_dense(GridShape::hypercube(8), rng, 1000);
  EXPECT_THROW(dist_unate_matching_lb(f, 3), CapacityError);
}

TEST(NoFamilyBound, Formula) {
  Rng rng(15);
  auto rec = draw_hard_record(16, rng);
  std::fill(rec.beta.begin(), rec.beta.end(), 1);
  EXPECT_EQ(no_family_distance_lb(rec).value, Rational(0));
  // Alternate signs inside every A_r.
  std::vector<int> parity(16, 0);
  for (std::size_t i = 0; i < rec.m(); ++i) rec.beta[i] = (parity[rec.r[i]]++ % 2) ? -1 : 1;
  bool balanced = true;
  for (auto r : rec.R) balanced &= parity[r] % 2 == 0;
  if (balanced) EXPECT_EQ(no_family_distance_lb(rec).value, Rational(1, 4));
  // Hand-built balanced record.
  HardInstanceRecord h;
  h.d = 4;
  h.k = 1;
  h.R = {0, 2};
  h.r = {0, 0, 2, 2};
  h.alpha = {1, 1, 1, 1};
  h.beta = {1, -1, -1, 1};
  EXPECT_EQ(no_family_distance_lb(h).value, Rational(1, 4));
}

TEST(NoFamilyBound, BelowExactDistance) {
  Rng rng(16);
  for (int t = 0; t < 50; ++t) {
    const auto [g, rec] = gen_no_sample(4, rng);
    const auto lb = no_family_distance_lb(rec);
    EXPECT_LE(lb.value, dist_unate_exact(g).value);
    EXPECT_LE(lb.value, dist_unate_matching_lb(g).value);
  }
}

TEST(MuProfile, Xor) {
  const auto p = mu_profile(xor2());
  EXPECT_EQ(p.mode, MuMode::EdgeFraction);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(p.alpha[i], Rational(1, 2));
    EXPECT_EQ(p.beta[i], Rational(1, 2));
    EXPECT_EQ(p.mu[i], Rational(1, 2));
  }
}

TEST(MuProfile, MonotoneHasNoDecreasingSide) {
  Rng rng(17);
  for (const auto& s : {GridShape(2, 4), GridShape(5, 2)}) {
    const auto p = mu_profile(gen_b_monotone(s, Orientation(s.d(), false), rng));
    for (const auto& a : p.alpha) EXPECT_EQ(a, Rational(0));
  }
}

TEST(MuProfile, EdgeFractionsByCounting) {
  Rng rng(18);
  for (int t = 0; t < 30; ++t) {
    const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.below(5));
    const Function f = random_dense(GridShape::hypercube(d), rng, 3);
    const auto p = mu_profile(f);
    const auto line = mu_profile(f, MuMode::LineDistance);
    for (std::uint32_t i = 0; i < d; ++i) {
      std::int64_t dec = 0;
      std::int64_t inc = 0;
      for (Index x = 0; x < f.shape().size(); ++x) {
        if ((x >> i) & 1u) continue;
        dec += f(x) > f(x | (Index{1} << i));
        inc += f(x) < f(x | (Index{1} << i));
      }
      const std::int64_t edges = std::int64_t{1} << (d - 1);
      EXPECT_EQ(p.alpha[i], Rational(dec, edges));
      EXPECT_EQ(p.beta[i], Rational(inc, edges));
      EXPECT_LE(p.alpha[i] + p.beta[i], Rational(1));
      // A two-point line needs one of its two points changed.
      EXPECT_EQ(line.alpha[i], Rational(dec, 2 * edges));
      EXPECT_EQ(p.b_star[i], !(p.alpha[i] < p.beta[i]));
    }
  }
}

TEST(MuProfile, EdgeModeNeedsHypercube) {
  EXPECT_THROW(mu_profile(make_dense(GridShape(3, 1), {0, 1, 2}), MuMode::EdgeFraction), ParameterError);
}

TEST(MuProfile, DimensionReductionOnRandomInstances) {
  Rng rng(19);
  for (const auto& s : {GridShape(2, 2), GridShape(2, 3), GridShape(2, 4), GridShape(4, 2), GridShape(3, 3)}) {
    for (int t = 0; t < 20; ++t) {
      const Function f = random_dense(s, rng, 5);
      for (MuMode mode : {MuMode::Auto, MuMode::LineDistance}) {
        const auto p = mu_profile(f, mode);
        const auto eps = dist_b_monotone_exact(f, p.b_star).value;
        EXPECT_GE(p.total(), eps * Rational(1, 4));
      }
    }
  }
}

TEST(LnsBound, NeverExceedsExact) {
  Rng rng(20);
  for (int t = 0; t < 60; ++t) {
    const GridShape s = t % 2 ? GridShape(4, 2) : GridShape(3, 3);
    const Function f = random_dense(s, rng, 4);
    EXPECT_LE(dist_unate_lns_lb(f).value, dist_unate_exact(f).value);
  }
}

TEST(TreeExact, WorkedLine) {
  const auto p = tree_tester_exact(std::vector<Value>{1, 0, 3, 2});
  EXPECT_EQ(p.none, Rational(1, 4));
  EXPECT_EQ(p.up, Rational(1, 4));
  EXPECT_EQ(p.down, Rational(1, 4));
  EXPECT_EQ(p.both, Rational(1, 4));
}

TEST(TreeExact, SortedLineNeverShowsDown) {
  for (std::size_t n = 1; n < 40; ++n) {
    std::vector<Value> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = static_cast<Value>(i / 3);
    EXPECT_EQ(tree_tester_exact(h).down_present(), Rational(0));
  }
}

TEST(OrderPatterns, CountsAreFubiniNumbers) {
  const std::vector<std::size_t> fubini{1, 1, 3, 13, 75, 541, 4683};
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t count = 0;
    for_each_order_pattern(n, [&](const std::vector<Value>&) { ++count; });
    EXPECT_EQ(count, fubini[n]);
  }
}

TEST(TreeExact, DetectionAndDichotomyOnAllSmallPatterns) {
  for (std::size_t n = 2; n <= 6; ++n) {
    for_each_order_pattern(n, [&](const std::vector<Value>& h) {
      const auto p = tree_tester_exact(h);
      const Rational eps = dist_line_monotone(h);
      ASSERT_GE(p.down_present(), eps);
      const Rational bar = eps * Rational(1, 25);
      ASSERT_TRUE(p.both >= bar || decreasing_pair_fraction(h) >= bar);
    });
  }
}

TEST(DecreasingPairs, Fraction) {
  EXPECT_EQ(decreasing_pair_fraction(std::vector<Value>{3, 2, 1}), Rational(1));
  EXPECT_EQ(decreasing_pair_fraction(std::vector<Value>{1, 0, 3, 2}), Rational(1, 3));
  EXPECT_THROW(decreasing_pair_fraction(std::vector<Value>{1}), ParameterError);
}

TEST(Certify, PicksStrongestAvailable) {
  EXPECT_EQ(certify(xor2()).kind, CertificateKind::Exact);
  Rng rng(21);
  const auto [g, rec] = gen_no_sample(8, rng);
  const auto c = certify(g);
  EXPECT_EQ(c.kind, CertificateKind::LowerBound);
  EXPECT_GE(c.value, no_family_distance_lb(rec).value);
  const auto j = to_json(c);
  EXPECT_TRUE(j.contains("distance"));
  EXPECT_TRUE(j.contains("method"));
}
