#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "unate/errors.hpp"
#include "unate/tree_tester.hpp"

using namespace unate;

namespace {

// Reference search: recursion on [lo, hi] with the floor midpoint.
void reference_path(std::uint32_t lo, std::uint32_t hi, std::uint32_t x, std::vector<Coord>& out) {
  const std::uint32_t mid = (lo + hi) / 2;
  out.push_back(mid);
  if (x < mid) reference_path(lo, mid - 1, x, out);
  if (x > mid) reference_path(mid + 1, hi, x, out);
}

DirectionSet run_at(const std::vector<Value>& h, Coord x, std::uint64_t* queries = nullptr) {
  CountingOracle o(make_dense(GridShape(static_cast<std::uint32_t>(h.size()), 1), h));
  const auto out = tree_tester_at(LineView(o), x);
  if (queries) *queries = o.count();
  EXPECT_EQ(out.queries, o.count());
  return out.dir;
}

}  // namespace

TEST(TreeSearchPath, HandTraces) {
  EXPECT_EQ(tree_search_path(8, 3), std::vector<Coord>({3}));
  EXPECT_EQ(tree_search_path(4, 0), std::vector<Coord>({1, 0}));
  EXPECT_EQ(tree_search_path(4, 3), std::vector<Coord>({1, 2, 3}));
  EXPECT_EQ(tree_search_path(1, 0), std::vector<Coord>({0}));
  EXPECT_THROW(tree_search_path(4, 4), ParameterError);
}

TEST(TreeSearchPath, MatchesReferenceAndDepthBound) {
  for (std::uint32_t n = 1; n <= 130; ++n) {
    const auto bound = static_cast<std::size_t>(std::floor(std::log2(n))) + 1;
    for (Coord x = 0; x < n; ++x) {
      std::vector<Coord> ref;
      reference_path(0, n - 1, x, ref);
      const auto path = tree_search_path(n, x);
      EXPECT_EQ(path, ref) << "n=" << n << " x=" << x;
      EXPECT_EQ(path.back(), x);
      EXPECT_LE(path.size(), bound);
      EXPECT_EQ(tree_path_length(n, x), path.size());
    }
  }
}

TEST(TreeTester, WorkedExample) {
  const std::vector<Value> h{1, 0, 3, 2};
  EXPECT_EQ(run_at(h, 0), (DirectionSet{false, true}));
  EXPECT_EQ(run_at(h, 1), (DirectionSet{false, false}));
  EXPECT_EQ(run_at(h, 2), (DirectionSet{true, false}));
  EXPECT_EQ(run_at(h, 3), (DirectionSet{true, true}));
}

TEST(TreeTester, StrictlyDecreasingLine) {
  const std::vector<Value> h{4, 3, 2, 1};
  for (Coord x = 0; x < 4; ++x) {
    std::uint64_t q = 0;
    const auto dir = run_at(h, x, &q);
    EXPECT_EQ(q, tree_path_length(4, x));
    EXPECT_EQ(dir, (q >= 2 ? DirectionSet{false, true} : DirectionSet{}));
  }
}

TEST(TreeTester, NondecreasingNeverReportsDown) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::uint32_t>(2 + rng.below(40));
    std::vector<Value> h(n);
    for (auto& v : h) v = static_cast<Value>(rng.below(5));
    std::sort(h.begin(), h.end());
    for (Coord x = 0; x < n; ++x) EXPECT_FALSE(run_at(h, x).down);
  }
}

TEST(TreeTester, OutcomeAgreesWithBruteForcePairs) {
  Rng rng(6);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::uint32_t>(2 + rng.below(30));
    std::vector<Value> h(n);
    for (auto& v : h) v = static_cast<Value>(rng.below(4));
    const Coord x = static_cast<Coord>(rng.below(n));
    auto path = tree_search_path(n, x);
    std::sort(path.begin(), path.end());
    DirectionSet expect;
    for (std::size_t a = 0; a < path.size(); ++a) {
      for (std::size_t b = a + 1; b < path.size(); ++b) {
        expect.up |= h[path[a]] < h[path[b]];
        expect.down |= h[path[a]] > h[path[b]];
      }
    }
    const auto got = run_at(h, x);
    EXPECT_EQ(got, expect);
  }
}

TEST(TreeTester, WitnessPairsAreOrderedAndCorrect) {
  const std::vector<Value> h{1, 0, 3, 2};
  CountingOracle o(make_dense(GridShape(4, 1), h));
  const auto out = tree_tester_at(LineView(o), 3);
  ASSERT_TRUE(out.increasing && out.decreasing);
  EXPECT_LT(out.increasing->first, out.increasing->second);
  EXPECT_LT(h[out.increasing->first], h[out.increasing->second]);
  EXPECT_LT(out.decreasing->first, out.decreasing->second);
  EXPECT_GT(h[out.decreasing->first], h[out.decreasing->second]);
}

TEST(TreeTester, RandomTargetIsUniform) {
  Rng rng(9);
  const std::vector<Value> h{1, 0, 3, 2};
  int both = 0;
  const int trials = 40000;
  for (int t = 0; t < trials; ++t) {
    CountingOracle o(make_dense(GridShape(4, 1), h));
    both += tree_tester(LineView(o), rng).dir.both();
  }
  // p = 1/4, sigma = sqrt(p(1-p)/trials) ~ 0.0022
  EXPECT_NEAR(static_cast<double>(both) / trials, 0.25, 4 * 0.0022);
}
