#pragma once

#include <cstdint>
#include <span>

#include <json.hpp>

namespace unate {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  bool operator==(const Interval&) const = default;
};

/// Wilson score interval for a binomial proportion. trials == 0 gives [0, 1].
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

/// Nearest-rank percentile (p in (0, 100]) of a sorted, nonempty sample.
std::uint64_t percentile(std::span<const std::uint64_t> sorted, double p);

struct CountSummary {
  std::uint64_t count = 0;
  std::uint64_t total = 0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  double mean = 0.0;
  std::uint64_t p50 = 0;
  std::uint64_t p90 = 0;
  std::uint64_t p99 = 0;

  bool operator==(const CountSummary&) const = default;
};

CountSummary summarize_counts(std::span<const std::uint64_t> values);

nlohmann::json to_json(const Interval& interval);
nlohmann::json to_json(const CountSummary& summary);

}  // namespace unate
