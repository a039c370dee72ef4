#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "unate/errors.hpp"
#include "unate/function.hpp"

namespace unate {

enum class PairClass { Increasing, Decreasing, Constant };

std::string_view to_string(PairClass c);

/// Compare f(lower) against f(upper).
constexpr PairClass classify_values(Value lower, Value upper) noexcept {
  if (lower < upper) return PairClass::Increasing;
  if (lower > upper) return PairClass::Decreasing;
  return PairClass::Constant;
}

/// Subset of {up, down}, the output alphabet of the tree tester.
struct DirectionSet {
  bool up = false;
  bool down = false;

  bool empty() const noexcept { return !up && !down; }
  bool both() const noexcept { return up && down; }
  DirectionSet operator|(DirectionSet o) const noexcept { return {up || o.up, down || o.down}; }
  friend bool operator==(DirectionSet, DirectionSet) = default;
};

struct TranscriptEntry {
  Index index;
  Value value;
};

enum class Recording { On, Off };

/// Query-counting wrapper around a Function. Every evaluation call counts,
/// repeats included. With Recording::On the ordered (point, value) transcript
/// is kept and its length always equals count(); bulk experiments switch it
/// off to avoid holding millions of entries.
///
/// Single owner: not safe for concurrent use.
class CountingOracle {
 public:
  explicit CountingOracle(Function f, Recording recording = Recording::On)
      : f_(std::move(f)), recording_(recording) {}

  Value query(const Point& x) { return query_index(f_.shape().index_of(x)); }

  Value query_index(Index idx) {
    if (idx >= f_.shape().size()) throw ParameterError("query index out of range");
    const Value v = f_(idx);
    ++count_;
    if (recording_ == Recording::On) transcript_.push_back({idx, v});
    return v;
  }

  std::uint64_t count() const noexcept { return count_; }
  bool recording() const noexcept { return recording_ == Recording::On; }
  const std::vector<TranscriptEntry>& transcript() const noexcept { return transcript_; }
  Point transcript_point(std::size_t k) const { return f_.shape().point_at(transcript_[k].index); }

  const Function& function() const noexcept { return f_; }
  const GridShape& shape() const noexcept { return f_.shape(); }

 private:
  Function f_;
  Recording recording_;
  std::uint64_t count_ = 0;
  std::vector<TranscriptEntry> transcript_;
};

/// A single i-line of an oracle's domain, addressed by position 0..n-1.
/// Queries are charged to the underlying oracle.
class LineView {
 public:
  LineView(CountingOracle& oracle, Index base, Index stride, std::uint32_t n)
      : oracle_(&oracle), base_(base), stride_(stride), n_(n) {}
  /// Whole domain of a one-dimensional oracle.
  explicit LineView(CountingOracle& oracle);
  /// The line-th i-line of the oracle's grid.
  static LineView along(CountingOracle& oracle, std::size_t i, Index line);

  std::uint32_t size() const noexcept { return n_; }
  Value query(Coord t) { return oracle_->query_index(index(t)); }
  Index index(Coord t) const noexcept { return base_ + t * stride_; }

 private:
  CountingOracle* oracle_;
  Index base_;
  Index stride_;
  std::uint32_t n_;
};

/// Classify the ordered pair (x, y), x the lower point. Costs exactly two queries.
PairClass classify_pair(CountingOracle& oracle, const Point& x, const Point& y);

}  // namespace unate
