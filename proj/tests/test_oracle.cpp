#include <gtest/gtest.h>

#include <map>

#include "unate/errors.hpp"
#include "unate/oracle.hpp"
#include "unate/sampling.hpp"

using namespace unate;

namespace {

Function weighted_sum_cube(std::uint32_t d) {
  // f(x) = sum_c x_c 3^c
  const GridShape s = GridShape::hypercube(d);
  std::vector<Value> t(s.size());
  for (Index idx = 0; idx < s.size(); ++idx) {
    Value v = 0;
    Value w = 1;
    for (std::uint32_t c = 0; c < d; ++c, w *= 3) v += static_cast<Value>((idx >> c) & 1u) * w;
    t[idx] = v;
  }
  return make_dense(s, t);
}

// Pearson statistic against the uniform distribution over `cells` outcomes.
double chi_square(const std::map<std::pair<Index, Index>, std::uint64_t>& counts, std::size_t cells,
                  std::uint64_t draws) {
  const double expected = static_cast<double>(draws) / static_cast<double>(cells);
  double stat = 0.0;
  for (const auto& [k, c] : counts) stat += (c - expected) * (c - expected) / expected;
  stat += static_cast<double>(cells - counts.size()) * expected;
  return stat;
}

}  // namespace

TEST(CountingOracle, CountsEveryCall) {
  CountingOracle o(make_dense(GridShape(2, 1), {0, 0}));
  EXPECT_EQ(o.query(Point{1}), 0);
  EXPECT_EQ(o.count(), 1u);
  o.query(Point{1});
  EXPECT_EQ(o.count(), 2u);
  EXPECT_EQ(o.transcript().size(), 2u);
  EXPECT_EQ(o.transcript_point(1), Point{1});
}

TEST(CountingOracle, InvalidPointLeavesCountUnchanged) {
  CountingOracle o(make_dense(GridShape(2, 2), {0, 1, 1, 0}));
  EXPECT_THROW(o.query(Point{2, 0}), ParameterError);
  EXPECT_THROW(o.query_index(4), ParameterError);
  EXPECT_EQ(o.count(), 0u);
  EXPECT_TRUE(o.transcript().empty());
}

TEST(CountingOracle, RecordingOffStillCounts) {
  CountingOracle o(make_dense(GridShape(2, 1), {3, 4}), Recording::Off);
  o.query_index(0);
  o.query_index(1);
  EXPECT_EQ(o.count(), 2u);
  EXPECT_TRUE(o.transcript().empty());
}

TEST(CountingOracle, WeightedSumValue) {
  CountingOracle o(weighted_sum_cube(3));
  EXPECT_EQ(o.query(Point{1, 0, 1}), 1 + 9);
  EXPECT_EQ(o.query(Point{0, 1, 1}), 3 + 9);
}

TEST(ClassifyPair, Trichotomy) {
  CountingOracle o(make_dense(GridShape(2, 2), {0, 1, 1, 0}));
  EXPECT_EQ(classify_pair(o, Point{0, 0}, Point{1, 0}), PairClass::Increasing);
  EXPECT_EQ(classify_pair(o, Point{0, 1}, Point{1, 1}), PairClass::Decreasing);
  EXPECT_EQ(o.count(), 4u);
  CountingOracle c(make_dense(GridShape(2, 2), {5, 5, 5, 5}));
  EXPECT_EQ(classify_pair(c, Point{0, 0}, Point{0, 1}), PairClass::Constant);
  EXPECT_THROW(classify_pair(c, Point{0, 0}, Point{0, 0}), ParameterError);
}

TEST(ClassifyPair, SwappingArgumentsFlipsClass) {
  const Function f = make_dense(GridShape(3, 1), {4, 9, 9});
  for (Coord a = 0; a < 3; ++a) {
    for (Coord b = 0; b < 3; ++b) {
      if (a == b) continue;
      CountingOracle o(f);
      const auto fwd = classify_pair(o, Point{a}, Point{b});
      const auto back = classify_pair(o, Point{b}, Point{a});
      if (fwd == PairClass::Constant) {
        EXPECT_EQ(back, PairClass::Constant);
      } else {
        EXPECT_NE(back, fwd);
        EXPECT_NE(back, PairClass::Constant);
      }
    }
  }
}

TEST(LineView, ChargesTheUnderlyingOracle) {
  std::vector<Value> t(9);
  for (Index i = 0; i < 9; ++i) t[i] = static_cast<Value>(i);
  CountingOracle o(make_dense(GridShape(3, 2), t));
  LineView line = LineView::along(o, 1, 2);  // x_0 = 2, x_1 varies
  EXPECT_EQ(line.size(), 3u);
  EXPECT_EQ(line.query(0), 2);
  EXPECT_EQ(line.query(2), 8);
  EXPECT_EQ(o.count(), 2u);
}

TEST(Sampling, EdgeInSingleDimension) {
  Rng rng(1);
  const GridShape s = GridShape::hypercube(1);
  for (int t = 0; t < 10; ++t) {
    const auto [x, y] = sample_i_edge(s, 0, rng);
    EXPECT_EQ(x, Point{0});
    EXPECT_EQ(y, Point{1});
  }
  EXPECT_THROW(sample_i_edge(GridShape(3, 2), 0, rng), ParameterError);
}

TEST(Sampling, EdgesDifferOnlyInDimension) {
  Rng rng(2);
  const GridShape s = GridShape::hypercube(7);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t i = t % 7;
    const auto [x, y] = sample_i_edge(s, i, rng);
    for (std::size_t c = 0; c < 7; ++c) {
      if (c == i) {
        EXPECT_EQ(x[c], 0u);
        EXPECT_EQ(y[c], 1u);
      } else {
        EXPECT_EQ(x[c], y[c]);
      }
    }
  }
}

TEST(Sampling, PairsAreOrderedIPairs) {
  Rng rng(3);
  const GridShape s(5, 3);
  for (int t = 0; t < 3000; ++t) {
    const std::size_t i = t % 3;
    const auto [x, y] = sample_i_pair(s, i, rng);
    EXPECT_LT(x[i], y[i]);
    for (std::size_t c = 0; c < 3; ++c) {
      if (c != i) EXPECT_EQ(x[c], y[c]);
    }
  }
}

// 0.001 critical values of the chi-square distribution: df 3 -> 16.266,
// df 5 -> 20.515, df 23 -> 49.728.
TEST(Sampling, EdgeChiSquare) {
  Rng rng(11);
  const GridShape s = GridShape::hypercube(3);
  std::map<std::pair<Index, Index>, std::uint64_t> counts;
  const std::uint64_t draws = 100000;
  for (std::uint64_t t = 0; t < draws; ++t) {
    const auto p = sample_edge_index(s, 1, rng);
    ++counts[{p.lower, p.upper}];
  }
  EXPECT_EQ(counts.size(), 4u);
  EXPECT_LT(chi_square(counts, 4, draws), 16.266);
}

TEST(Sampling, PairChiSquareSingleLine) {
  Rng rng(12);
  const GridShape s(4, 1);
  std::map<std::pair<Index, Index>, std::uint64_t> counts;
  const std::uint64_t draws = 100000;
  for (std::uint64_t t = 0; t < draws; ++t) {
    const auto p = sample_pair_index(s, 0, rng);
    ++counts[{p.lower, p.upper}];
  }
  EXPECT_EQ(counts.size(), 6u);
  EXPECT_LT(chi_square(counts, 6, draws), 20.515);
}

TEST(Sampling, PairChiSquareAcrossLines) {
  Rng rng(13);
  const GridShape s(4, 2);
  std::map<std::pair<Index, Index>, std::uint64_t> counts;
  const std::uint64_t draws = 100000;
  for (std::uint64_t t = 0; t < draws; ++t) {
    const auto p = sample_pair_index(s, 1, rng);
    ++counts[{p.lower, p.upper}];
  }
  EXPECT_EQ(counts.size(), 24u);
  EXPECT_LT(chi_square(counts, 24, draws), 49.728);
}

TEST(Sampling, PairOnHypercubeIsAnEdge) {
  Rng rng(14);
  const GridShape s = GridShape::hypercube(4);
  for (int t = 0; t < 500; ++t) {
    const auto p = sample_pair_index(s, 2, rng);
    EXPECT_EQ(p.upper - p.lower, 4u);
    EXPECT_EQ((p.lower >> 2) & 1u, 0u);
  }
}

TEST(Sampling, InsertZeroBit) {
  EXPECT_EQ(insert_zero_bit(0b111, 0), 0b1110u);
  EXPECT_EQ(insert_zero_bit(0b111, 1), 0b1101u);
  EXPECT_EQ(insert_zero_bit(0b111, 3), 0b0111u);
}
