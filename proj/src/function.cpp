#include "unate/function.hpp"

#include <string>

#include "unate/errors.hpp"

namespace unate {

namespace {

class DenseTable final : public Evaluator {
 public:
  explicit DenseTable(std::vector<Value> values) : values_(std::move(values)) {}
  Value at(Index idx) const override { return values_[idx]; }
  const std::vector<Value>& values() const noexcept { return values_; }

 private:
  std::vector<Value> values_;
};

class LineRestriction final : public Evaluator {
 public:
  LineRestriction(Function parent, Index base, Index stride)
      : parent_(std::move(parent)), base_(base), stride_(stride) {}
  Value at(Index t) const override { return parent_(base_ + t * stride_); }

 private:
  Function parent_;
  Index base_;
  Index stride_;
};

}  // namespace

Function::Function(GridShape shape, std::shared_ptr<const Evaluator> rule)
    : shape_(std::move(shape)), rule_(std::move(rule)) {
  if (!rule_) throw ParameterError("function requires an evaluator");
  if (const auto* table = dynamic_cast<const DenseTable*>(rule_.get())) {
    if (table->values().size() != shape_.size()) {
      throw ParameterError("dense table length does not match domain size");
    }
    dense_ = table->values().data();
  }
}

std::span<const Value> Function::table() const noexcept {
  if (!dense_) return {};
  return {dense_, static_cast<std::size_t>(shape_.size())};
}

Function Function::materialize(Index capacity) const {
  if (dense_) return *this;
  if (shape_.size() > capacity) {
    throw CapacityError("refusing to materialize " + std::to_string(shape_.size()) +
                        " values (capacity " + std::to_string(capacity) + ")");
  }
  std::vector<Value> values(shape_.size());
  for (Index idx = 0; idx < shape_.size(); ++idx) values[idx] = rule_->at(idx);
  return make_dense(shape_, std::move(values));
}

Function make_dense(GridShape shape, std::vector<Value> table) {
  if (table.size() != shape.size()) {
    throw ParameterError("table has " + std::to_string(table.size()) + " values, domain has " +
                         std::to_string(shape.size()));
  }
  return Function(std::move(shape), std::make_shared<DenseTable>(std::move(table)));
}

Function restrict_to_line(const Function& f, std::size_t i, const Point& anchor) {
  const GridShape& shape = f.shape();
  if (i >= shape.d()) throw ParameterError("line dimension out of range");
  Point base = anchor;
  if (base.size() == shape.d() && i < base.size()) base[i] = 0;
  const Index base_idx = shape.index_of(base);
  return Function(GridShape(shape.n(), 1),
                  std::make_shared<LineRestriction>(f, base_idx, shape.stride(i)));
}

nlohmann::json dense_to_json(const Function& f) {
  const Function dense = f.materialize();
  nlohmann::json doc;
  doc["n"] = dense.shape().n();
  doc["d"] = dense.shape().d();
  auto values = nlohmann::json::array();
  for (Value v : dense.table()) values.push_back(v);
  doc["values"] = std::move(values);
  return doc;
}

Function dense_from_json(const nlohmann::json& doc) {
  try {
    const auto n = doc.at("n").get<std::uint32_t>();
    const auto d = doc.at("d").get<std::uint32_t>();
    const auto& values = doc.at("values");
    if (!values.is_array()) throw FormatError("\"values\" must be an array");
    std::vector<Value> table;
    table.reserve(values.size());
    for (const auto& v : values) {
      if (!v.is_number_integer()) throw FormatError("function values must be exact integers");
      table.push_back(v.get<Value>());
    }
    return make_dense(GridShape(n, d), std::move(table));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad function document: ") + e.what());
  }
}

}  // namespace unate
