#include "unate/oracle.hpp"

namespace unate {

std::string_view to_string(PairClass c) {
  switch (c) {
    case PairClass::Increasing:
      return "increasing";
    case PairClass::Decreasing:
      return "decreasing";
    case PairClass::Constant:
      return "constant";
  }
  return "?";
}

LineView::LineView(CountingOracle& oracle) : LineView(oracle, 0, 1, oracle.shape().n()) {
  if (oracle.shape().d() != 1) throw ParameterError("LineView needs a one-dimensional oracle");
}

LineView LineView::along(CountingOracle& oracle, std::size_t i, Index line) {
  const GridShape& shape = oracle.shape();
  return LineView(oracle, shape.line_base(i, line), shape.stride(i), shape.n());
}

PairClass classify_pair(CountingOracle& oracle, const Point& x, const Point& y) {
  if (x == y) throw ParameterError("classify_pair needs two distinct points");
  const GridShape& shape = oracle.shape();
  // Validate both before charging any query.
  const Index xi = shape.index_of(x);
  const Index yi = shape.index_of(y);
  const Value fx = oracle.query_index(xi);
  const Value fy = oracle.query_index(yi);
  return classify_values(fx, fy);
}

}  // namespace unate
