#include "unate/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "unate/errors.hpp"

namespace unate {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (successes > trials) throw ParameterError("more successes than trials");
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::uint64_t percentile(std::span<const std::uint64_t> sorted, double p) {
  if (sorted.empty()) throw ParameterError("percentile of an empty sample");
  if (!(p > 0.0 && p <= 100.0)) throw ParameterError("percentile rank must lie in (0, 100]");
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

CountSummary summarize_counts(std::span<const std::uint64_t> values) {
  CountSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  for (auto v : sorted) s.total += v;
  s.min = sorted.front();
  s.max = sorted.back();
  s.mean = static_cast<double>(s.total) / static_cast<double>(s.count);
  s.p50 = percentile(sorted, 50);
  s.p90 = percentile(sorted, 90);
  s.p99 = percentile(sorted, 99);
  return s;
}

nlohmann::json to_json(const Interval& interval) { return {{"lo", interval.lo}, {"hi", interval.hi}}; }

nlohmann::json to_json(const CountSummary& s) {
  return {{"count", s.count}, {"total", s.total}, {"min", s.min}, {"max", s.max}, {"mean", s.mean},
          {"p50", s.p50},     {"p90", s.p90},     {"p99", s.p99}};
}

}  // namespace unate
