#include "unate/schedule.hpp"

#include <cmath>
#include <limits>

#include "unate/errors.hpp"

namespace unate {

namespace {

void check_epsilon(double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) throw ParameterError("epsilon must lie in (0, 1/2]");
}

}  // namespace

// numerator:  the constant c in s_r = ceil(c / 2^r), i.e. 4 ln 4 / mu.
// level_arg:  1 / mu.
WorkInvestmentSchedule::WorkInvestmentSchedule(double numerator, double level_arg,
                                               LevelBound bound) {
  const double r_max = bound == LevelBound::Sufficient ? std::ceil(std::log2(4.0 * level_arg))
                                                       : std::ceil(3.0 * std::log2(level_arg));
  if (!(r_max >= 1.0) || r_max > 60.0) throw ParameterError("level count out of range");
  const int levels = static_cast<int>(r_max);
  repetitions_.reserve(static_cast<std::size_t>(levels));
  for (int r = 1; r <= levels; ++r) {
    const double s = std::ceil(numerator / std::ldexp(1.0, r));
    repetitions_.push_back(static_cast<std::uint64_t>(s));
  }
}

WorkInvestmentSchedule WorkInvestmentSchedule::hypercube(std::uint32_t d, double eps,
                                                         LevelBound bound) {
  check_epsilon(eps);
  if (d == 0) throw ParameterError("dimension must be positive");
  return WorkInvestmentSchedule(16.0 * d * std::log(4.0) / eps, 4.0 * d / eps, bound);
}

WorkInvestmentSchedule WorkInvestmentSchedule::hypergrid(std::uint32_t d, double eps,
                                                         LevelBound bound) {
  check_epsilon(eps);
  if (d == 0) throw ParameterError("dimension must be positive");
  return WorkInvestmentSchedule(800.0 * d * std::log(4.0) / eps, 200.0 * d / eps, bound);
}

std::uint64_t WorkInvestmentSchedule::total_samples() const {
  std::uint64_t total = 0;
  for (int r = 1; r <= levels(); ++r) {
    const std::uint64_t per = samples(r);
    const std::uint64_t s = repetitions(r);
    if (s != 0 && per > std::numeric_limits<std::uint64_t>::max() / s) {
      throw ParameterError("schedule total overflows");
    }
    total += s * per;
  }
  return total;
}

}  // namespace unate
