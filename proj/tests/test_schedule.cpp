#include <gtest/gtest.h>

#include <cmath>

#include "unate/errors.hpp"
#include "unate/schedule.hpp"

using namespace unate;

TEST(Schedule, ExtendedBoundSmallExample) {
  const auto s = WorkInvestmentSchedule::hypercube(4, 0.5, LevelBound::Extended);
  EXPECT_EQ(s.levels(), 15);  // ceil(3 log2 32)
  EXPECT_EQ(s.repetitions(1), 89u);
}

TEST(Schedule, SufficientBoundLevels) {
  // mu = eps / (4d) -> r_max = ceil(log2(16 d / eps))
  EXPECT_EQ(WorkInvestmentSchedule::hypercube(4, 0.5).levels(), 7);
  EXPECT_EQ(WorkInvestmentSchedule::hypercube(20, 0.125).levels(), 12);
  // mu = eps / (200 d) -> r_max = ceil(log2(800 d / eps))
  EXPECT_EQ(WorkInvestmentSchedule::hypergrid(6, 0.25).levels(), 15);
}

TEST(Schedule, RepetitionsMatchFormula) {
  for (std::uint32_t d : {1u, 3u, 16u, 100u}) {
    for (double eps : {0.3, 0.125, 0.01}) {
      const auto s = WorkInvestmentSchedule::hypercube(d, eps);
      const auto g = WorkInvestmentSchedule::hypergrid(d, eps);
      for (int r = 1; r <= s.levels(); ++r) {
        EXPECT_EQ(s.repetitions(r), static_cast<std::uint64_t>(std::ceil(16.0 * d * std::log(4.0) / (eps * std::ldexp(1.0, r)))));
      }
      for (int r = 1; r <= g.levels(); ++r) {
        EXPECT_EQ(g.repetitions(r), static_cast<std::uint64_t>(std::ceil(800.0 * d * std::log(4.0) / (eps * std::ldexp(1.0, r)))));
      }
    }
  }
}

TEST(Schedule, PositiveAndNonincreasing) {
  for (auto bound : {LevelBound::Sufficient, LevelBound::Extended}) {
    const auto s = WorkInvestmentSchedule::hypercube(8, 0.2, bound);
    for (int r = 1; r <= s.levels(); ++r) {
      EXPECT_GE(s.repetitions(r), 1u);
      if (r > 1) EXPECT_LE(s.repetitions(r), s.repetitions(r - 1));
    }
  }
}

TEST(Schedule, TotalSamples) {
  const auto s = WorkInvestmentSchedule::hypercube(4, 0.5, LevelBound::Extended);
  std::uint64_t total = 0;
  for (int r = 1; r <= s.levels(); ++r) total += s.repetitions(r) * (std::uint64_t{3} << r);
  EXPECT_EQ(s.total_samples(), total);
  EXPECT_EQ(WorkInvestmentSchedule::samples(3), 24u);
}

TEST(Schedule, RejectsBadEpsilon) {
  EXPECT_THROW(WorkInvestmentSchedule::hypercube(4, 0.0), ParameterError);
  EXPECT_THROW(WorkInvestmentSchedule::hypercube(4, 0.6), ParameterError);
  EXPECT_THROW(WorkInvestmentSchedule::hypergrid(4, -0.1), ParameterError);
}

// Work investment: for X in [0, 1] with E[X] >= mu, some level r has
// Pr[X >= 2^-r] well above 2^r / s_r. Checked on two-point distributions
// by evaluating the failure probability prod_r (1 - p_r)^(s_r) exactly.
TEST(Schedule, SufficientLevelsDetectTwoPointVariables) {
  const std::uint32_t d = 16;
  const double eps = 0.125;
  const double mu = eps / (4.0 * d);
  const auto s = WorkInvestmentSchedule::hypercube(d, eps);
  for (int k = 0; k <= 40; ++k) {
    // X = a with probability q, else 0, with q a = mu.
    const double a = std::ldexp(1.0, -k / 4);
    const double q = mu / a;
    if (q > 1.0) continue;
    double log_fail = 0.0;
    for (int r = 1; r <= s.levels(); ++r) {
      const double p = a >= std::ldexp(1.0, -r) ? q : 0.0;
      log_fail += static_cast<double>(s.repetitions(r)) * std::log1p(-std::min(p, 1.0 - 1e-300));
    }
    EXPECT_LE(std::exp(log_fail), 0.25) << "a=" << a;
  }
}
