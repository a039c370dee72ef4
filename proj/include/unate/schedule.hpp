#pragma once

#include <cstdint>
#include <vector>

namespace unate {

/// How many work-investment levels to run.
///
/// Both bounds use s_r = ceil(4 ln 4 / (mu 2^r)) repetitions with 3 * 2^r
/// samples at level r. They differ in the last level:
///   - Sufficient: r_max = ceil(log2(4 / mu)). Levels past this point cannot
///     change the failure bound, and the query total stays
///     O(log(1/mu) / mu).
///   - Extended: r_max = ceil(3 log2(1 / mu)). Once s_r bottoms out at 1 the
///     level cost is 6 * 2^r queries, so the total grows like mu^-3. Kept for
///     reference and for small-parameter reproductions.
enum class LevelBound { Sufficient, Extended };

/// Level schedule of the nonadaptive testers (levels r = 1..r_max).
class WorkInvestmentSchedule {
 public:
  /// Nonadaptive hypercube tester: mu = eps / (4d), s_r = ceil(16 d ln 4 / (eps 2^r)).
  static WorkInvestmentSchedule hypercube(std::uint32_t d, double eps,
                                          LevelBound bound = LevelBound::Sufficient);
  /// Pair phase of the nonadaptive hypergrid tester:
  /// mu = eps / (200 d), s_r = ceil(800 d ln 4 / (eps 2^r)).
  static WorkInvestmentSchedule hypergrid(std::uint32_t d, double eps,
                                          LevelBound bound = LevelBound::Sufficient);

  /// Number of levels r_max.
  int levels() const noexcept { return static_cast<int>(repetitions_.size()); }
  /// s_r for r in [1, levels()].
  std::uint64_t repetitions(int r) const { return repetitions_.at(static_cast<std::size_t>(r - 1)); }
  /// Samples drawn per repetition at level r: 3 * 2^r.
  static std::uint64_t samples(int r) noexcept { return std::uint64_t{3} << r; }
  /// sum_r s_r * 3 * 2^r.
  std::uint64_t total_samples() const;

 private:
  WorkInvestmentSchedule(double numerator, double level_arg, LevelBound bound);
  std::vector<std::uint64_t> repetitions_;
};

}  // namespace unate
