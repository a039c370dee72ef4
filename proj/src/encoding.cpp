#include "unate/encoding.hpp"

#include "unate/errors.hpp"

namespace unate {

Index binary_value(const Point& x) {
  Index v = 0;
  for (std::size_t c = x.size(); c-- > 0;) {
    if (x[c] > 1) throw ParameterError("binary_value needs a 0/1 point");
    v = (v << 1) | x[c];
  }
  return v;
}

Point phi(const GridShape& grid, const Point& y) {
  if (!is_power_of_two(grid.n())) throw ParameterError("phi needs n a power of two");
  if (!grid.contains(y)) throw ParameterError("point outside the grid");
  const unsigned bits = log2_exact(grid.n());
  std::vector<Coord> out;
  out.reserve(static_cast<std::size_t>(grid.d()) * bits);
  for (std::size_t c = 0; c < grid.d(); ++c) {
    for (unsigned t = 0; t < bits; ++t) out.push_back((y[c] >> t) & 1u);
  }
  return Point(std::move(out));
}

Index psi_index(const GridShape& grid, Index idx) {
  Index out = 0;
  for (std::size_t c = 0; c < grid.d(); ++c) {
    out |= Index{psi(static_cast<Coord>(idx % grid.n()), grid.n())} << c;
    idx /= grid.n();
  }
  return out;
}

}  // namespace unate
