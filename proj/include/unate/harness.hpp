#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "unate/generators.hpp"
#include "unate/groundtruth.hpp"
#include "unate/stats.hpp"
#include "unate/testers.hpp"

namespace unate {

std::string tool_version();

enum class CertificationMode { None, Exact, LowerBound };

std::string to_string(CertificationMode mode);   // "none", "exact", "lower-bound"
CertificationMode certification_from_string(const std::string& name);
std::string to_string(LevelBound bound);         // "sufficient", "extended"
LevelBound level_bound_from_string(const std::string& name);

/// One batch of independent tester runs. JSON field names match the members.
struct ExperimentConfig {
  TesterId tester = TesterId::NonadaptiveHypercube;
  nlohmann::json generator;       ///< family spec accepted by instantiate()
  double eps = 0.125;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  CertificationMode certification = CertificationMode::None;
  double threshold = 0.0;         ///< trials count toward the conditional rate iff distance >= threshold
  unsigned jobs = 1;              ///< worker threads; never affects the report
  /// Number of distinct instances; trial t uses instance t mod pool.
  /// 0 draws a fresh instance for every trial.
  std::uint64_t pool = 0;
  /// Instances up to this many points are tabulated before testing.
  std::uint64_t materialize_limit = std::uint64_t{1} << 20;
  LevelBound level_bound = LevelBound::Sufficient;

  /// Throws ParameterError on an invalid combination.
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);   // omits jobs
ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);

/// Seed of the tester stream of trial t: `unatest test --seed` with this value
/// and the instance replays the trial.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);
/// Seed from which instance i is drawn (`unatest gen --seed`).
std::uint64_t instance_seed(std::uint64_t master, std::uint64_t instance);

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t instance = 0;
  std::uint64_t instance_seed = 0;
  Decision decision = Decision::Accept;
  std::uint64_t queries = 0;
  bool aborted = false;
  /// Rejections only: whether the witness re-verifies on a fresh oracle.
  std::optional<bool> witness_valid;
  std::optional<DistanceCertificate> distance;
  /// Counted in the conditional aggregate.
  bool eligible = false;
};

struct ConditionalRate {
  std::uint64_t eligible = 0;
  std::uint64_t rejections = 0;
  double rate = 0.0;
  Interval ci;

  bool operator==(const ConditionalRate&) const = default;
};

struct ExperimentAggregates {
  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  double rejection_rate = 0.0;
  Interval rejection_ci;
  std::optional<ConditionalRate> conditional;
  CountSummary queries;
  std::uint64_t aborts = 0;
  std::uint64_t invalid_witnesses = 0;
};

bool operator==(const ExperimentAggregates& a, const ExperimentAggregates& b);

ExperimentAggregates aggregate(const std::vector<TrialRecord>& trials, const ExperimentConfig& config);

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  ExperimentAggregates aggregates;
  /// Pool mode: the parameter record of every instance.
  std::vector<nlohmann::json> instances;
  std::string version;
};

/// Deterministic in (config minus jobs).
ExperimentReport run_experiment(const ExperimentConfig& config);

nlohmann::json to_json(const TrialRecord& record);
TrialRecord trial_record_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentAggregates& aggregates);
nlohmann::json to_json(const ExperimentReport& report);
/// One header line and one line per trial.
std::string trials_csv(const ExperimentReport& report);

/// Recomputes the aggregate block of a serialized report from its trial rows
/// and compares it with the stored one.
bool audit_report(const nlohmann::json& report);

// ---------------------------------------------------------------------------

struct SweepConfig {
  TesterId tester = TesterId::NonadaptiveHypercube;
  double eps = 0.125;
  /// (n, d) points. Family specs receive "n" and "d"; yes/no specs receive
  /// "d" (and "lift_n" when n > 2).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> points;
  nlohmann::json generator = {{"family", "constant"}};
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  LevelBound level_bound = LevelBound::Sufficient;
};

struct SweepRow {
  std::uint32_t n = 2;
  std::uint32_t d = 1;
  double eps = 0.0;
  /// The nonadaptive hypercube count is exact without running anything.
  bool closed_form = false;
  std::uint64_t trials = 0;
  double mean_queries = 0.0;
  std::uint64_t max_queries = 0;
  /// The stated growth form at this point (no constant):
  ///   na-cube (d/eps) log2(d/eps)          ad-cube d/eps
  ///   na-grid (d/eps)(log2(d/eps) + log2 n) ad-grid d log2(n) / eps
  double model = 0.0;
  double ratio = 0.0;   ///< mean_queries / model
};

double growth_model(TesterId tester, std::uint32_t n, std::uint32_t d, double eps);
/// Exact query count of the nonadaptive hypercube tester on {0,1}^d.
std::uint64_t nonadaptive_hypercube_queries(std::uint32_t d, double eps, LevelBound bound = LevelBound::Sufficient);

std::vector<SweepRow> query_scaling_sweep(const SweepConfig& config);
nlohmann::json to_json(const SweepRow& row);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Line-distance mu estimated from `lines` uniformly sampled lines per
/// dimension (for domains too large to scan).
MuProfile sampled_mu_profile(const Function& f, std::uint64_t lines, Rng& rng);

}  // namespace unate
