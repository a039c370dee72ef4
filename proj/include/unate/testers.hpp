#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "unate/oracle.hpp"
#include "unate/rng.hpp"
#include "unate/sampling.hpp"
#include "unate/schedule.hpp"

namespace unate {

enum class Decision { Accept, Reject };
enum class WitnessKind { EdgePair, GeneralPair, TreePath };

/// Evidence of non-unateness: in one dimension, an increasing and a decreasing
/// pair. Each pair differs only in coordinate `dimension`, lower point first.
struct ViolationWitness {
  std::size_t dimension = 0;
  std::pair<Point, Point> increasing;
  std::pair<Point, Point> decreasing;
  WitnessKind kind = WitnessKind::EdgePair;
};

/// Outcome of one tester run. A Reject always carries a witness; an aborted
/// run (query cap reached) always accepts.
struct Verdict {
  Decision decision = Decision::Accept;
  std::uint64_t queries = 0;
  std::optional<ViolationWitness> witness;
  bool aborted = false;

  bool rejected() const noexcept { return decision == Decision::Reject; }
};

/// Re-check a witness on a fresh oracle: both pairs are i-pairs and classify as
/// one Increasing and one Decreasing.
bool verify_witness(const Function& f, const ViolationWitness& witness);

enum class TesterId { NonadaptiveHypercube, AdaptiveHypercube, NonadaptiveHypergrid, AdaptiveHypergrid };

std::string_view to_string(TesterId id);   // "na-cube", "ad-cube", "na-grid", "ad-grid"
TesterId tester_from_string(std::string_view name);

// ---------------------------------------------------------------------------
// Value-independent query plans of the nonadaptive testers. The planners never
// see the function, so the queried multiset depends on the random stream only.

/// Pair phase: per level r, s_r groups of 3 * 2^r uniform pairs in one uniformly
/// chosen dimension. Call next_group(), then draw() exactly `size` times.
class PairPlan {
 public:
  enum class Sampler { Edge, Pair };
  struct Group {
    std::size_t dimension;
    std::uint64_t size;
  };

  PairPlan(GridShape shape, WorkInvestmentSchedule schedule, Sampler sampler);

  std::optional<Group> next_group(Rng& rng);
  IndexPair draw(Rng& rng) const;

 private:
  GridShape shape_;
  WorkInvestmentSchedule schedule_;
  Sampler sampler_;
  int level_ = 1;
  std::uint64_t rep_ = 0;
  std::size_t dimension_ = 0;
};

/// Tree phase: `repetitions` rounds of one random line and search target per dimension.
class TreePlan {
 public:
  struct Probe {
    std::size_t dimension;
    Index line;
    Coord target;
  };

  TreePlan(GridShape shape, std::uint64_t repetitions);
  std::optional<Probe> next(Rng& rng);

 private:
  GridShape shape_;
  std::uint64_t repetitions_;
  std::uint64_t rep_ = 0;
  std::size_t dimension_ = 0;
};

/// Every point the nonadaptive hypercube tester will query, in order.
std::vector<Index> nonadaptive_hypercube_plan(const GridShape& shape, double eps, Rng& rng,
                                              LevelBound bound = LevelBound::Sufficient);
/// Every point the nonadaptive hypergrid tester will query, in order.
std::vector<Index> nonadaptive_hypergrid_plan(const GridShape& shape, double eps, Rng& rng,
                                              LevelBound bound = LevelBound::Sufficient);

// ---------------------------------------------------------------------------
// Testers. All require 0 < eps < 1/2 and throw ParameterError otherwise.

/// Edge tester with the work-investment level schedule. Executes its whole
/// plan, so the query count is exactly 2 * schedule.total_samples().
Verdict nonadaptive_hypercube_test(CountingOracle& oracle, double eps, Rng& rng,
                                   LevelBound bound = LevelBound::Sufficient);

/// ceil(10/eps) passes over the dimensions; a non-constant edge is confirmed
/// by resampling until another non-constant edge appears. Aborts and accepts
/// before exceeding floor(240 d / eps) queries.
Verdict adaptive_hypercube_test(CountingOracle& oracle, double eps, Rng& rng);

/// As above with tree-tester runs on random lines; the cap is
/// floor(240 d log2(n) / eps).
Verdict adaptive_hypergrid_test(CountingOracle& oracle, double eps, Rng& rng);

/// Tree phase (ceil(220/eps) rounds) followed by the pair phase with
/// s_r = ceil(800 d ln 4 / (eps 2^r)). Executes its whole plan.
Verdict nonadaptive_hypergrid_test(CountingOracle& oracle, double eps, Rng& rng,
                                   LevelBound bound = LevelBound::Sufficient);

Verdict run_tester(TesterId id, CountingOracle& oracle, double eps, Rng& rng,
                   LevelBound bound = LevelBound::Sufficient);

/// Query caps of the adaptive testers.
std::uint64_t adaptive_hypercube_cap(std::uint32_t d, double eps);
std::uint64_t adaptive_hypergrid_cap(std::uint32_t n, std::uint32_t d, double eps);
/// Outer repetitions of the adaptive testers, ceil(10/eps).
std::uint64_t adaptive_repetitions(double eps);

/// A single outer pass of the adaptive testers (no cap), for per-pass
/// rejection-probability measurements.
std::optional<ViolationWitness> adaptive_hypercube_pass(CountingOracle& oracle, Rng& rng);
std::optional<ViolationWitness> adaptive_hypergrid_pass(CountingOracle& oracle, Rng& rng);

nlohmann::json to_json(const ViolationWitness& w);
/// {"decision":..., "queries":..., "aborted":..., "witness":{...}|null, "seed":...}
nlohmann::json to_json(const Verdict& v, std::uint64_t seed);

}  // namespace unate
