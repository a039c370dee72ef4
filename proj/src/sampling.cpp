#include "unate/sampling.hpp"

#include "unate/errors.hpp"

namespace unate {

namespace {

void check_dimension(const GridShape& shape, std::size_t i) {
  if (i >= shape.d()) throw ParameterError("dimension out of range");
}

}  // namespace

IndexPair sample_edge_index(const GridShape& shape, std::size_t i, Rng& rng) {
  if (!shape.is_hypercube()) throw ParameterError("i-edges are defined on hypercubes only");
  check_dimension(shape, i);
  const Index lower = insert_zero_bit(rng.below(shape.size() >> 1), i);
  return {lower, lower | (Index{1} << i)};
}

IndexPair sample_pair_index(const GridShape& shape, std::size_t i, Rng& rng) {
  check_dimension(shape, i);
  const Index n = shape.n();
  const Index lines = shape.line_count();
  // One draw covers (line, a, b) whenever the product fits.
  Index line;
  Index a;
  Index b;
  const Index ordered = n * (n - 1);
  if (lines <= (~Index{0}) / ordered) {
    Index v = rng.below(lines * ordered);
    a = v % n;
    v /= n;
    b = v % (n - 1);
    line = v / (n - 1);
  } else {
    line = rng.below(lines);
    a = rng.below(n);
    b = rng.below(n - 1);
  }
  if (b >= a) ++b;
  if (a > b) std::swap(a, b);
  const Index base = shape.line_base(i, line);
  const Index stride = shape.stride(i);
  return {base + a * stride, base + b * stride};
}

std::pair<Point, Point> sample_i_edge(const GridShape& shape, std::size_t i, Rng& rng) {
  const IndexPair p = sample_edge_index(shape, i, rng);
  return {shape.point_at(p.lower), shape.point_at(p.upper)};
}

std::pair<Point, Point> sample_i_pair(const GridShape& shape, std::size_t i, Rng& rng) {
  const IndexPair p = sample_pair_index(shape, i, rng);
  return {shape.point_at(p.lower), shape.point_at(p.upper)};
}

}  // namespace unate
