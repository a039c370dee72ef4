#pragma once

#include <memory>
#include <span>
#include <vector>

#include <json.hpp>

#include "unate/grid.hpp"

namespace unate {

/// Pointwise rule behind a Function. Implementations must be pure.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual Value at(Index idx) const = 0;
  /// Parameter record that re-creates this rule, or null for tables.
  virtual nlohmann::json record() const { return nullptr; }
};

/// An exact-valued function on a grid: either a dense table of n^d values or a
/// closed-form rule. Immutable and cheap to copy; safe to share across threads.
class Function {
 public:
  /// Largest table materialize() will allocate by default (2^26 values).
  static constexpr Index kMaterializeCapacity = Index{1} << 26;

  Function(GridShape shape, std::shared_ptr<const Evaluator> rule);

  const GridShape& shape() const noexcept { return shape_; }

  Value operator()(Index idx) const { return dense_ ? dense_[idx] : rule_->at(idx); }
  /// Validating evaluation at a point.
  Value operator()(const Point& x) const { return (*this)(shape_.index_of(x)); }

  bool is_dense() const noexcept { return dense_ != nullptr; }
  /// Backing table; empty unless is_dense().
  std::span<const Value> table() const noexcept;
  nlohmann::json record() const { return rule_->record(); }

  /// Dense copy of this function (itself if already dense).
  Function materialize(Index capacity = kMaterializeCapacity) const;

 private:
  GridShape shape_;
  std::shared_ptr<const Evaluator> rule_;
  const Value* dense_ = nullptr;
};

/// Dense function reading `table` by mixed-radix index.
Function make_dense(GridShape shape, std::vector<Value> table);

/// h(t) = f(anchor with coordinate i set to t), a function on [n]^1.
/// The anchor's i-th coordinate is ignored.
Function restrict_to_line(const Function& f, std::size_t i, const Point& anchor);

/// {"n":..., "d":..., "values":[...]}; f must be dense or materializable.
nlohmann::json dense_to_json(const Function& f);
Function dense_from_json(const nlohmann::json& doc);

}  // namespace unate
