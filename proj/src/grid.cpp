#include "unate/grid.hpp"

#include <sstream>

#include "unate/errors.hpp"

namespace unate {

std::string to_string(const Point& x) {
  std::ostringstream out;
  out << '(';
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (c) out << ',';
    out << x[c];
  }
  out << ')';
  return out.str();
}

GridShape::GridShape(std::uint32_t n, std::uint32_t d) : n_(n), d_(d), size_(1) {
  if (n < 2) throw ParameterError("grid side length must be at least 2");
  if (d < 1) throw ParameterError("grid dimension must be at least 1");
  strides_.reserve(d);
  for (std::uint32_t c = 0; c < d; ++c) {
    strides_.push_back(size_);
    if (size_ > kMaxSize / n) {
      throw ParameterError("domain size " + std::to_string(n) + "^" + std::to_string(d) +
                           " exceeds the supported index range");
    }
    size_ *= n;
  }
}

bool GridShape::contains(const Point& x) const noexcept {
  if (x.size() != d_) return false;
  for (std::size_t c = 0; c < d_; ++c) {
    if (x[c] >= n_) return false;
  }
  return true;
}

Index GridShape::index_of(const Point& x) const {
  if (!contains(x)) {
    throw ParameterError("point " + to_string(x) + " is not in [" + std::to_string(n_) + "]^" +
                         std::to_string(d_));
  }
  Index idx = 0;
  for (std::size_t c = d_; c-- > 0;) idx = idx * n_ + x[c];
  return idx;
}

Point GridShape::point_at(Index idx) const {
  if (idx >= size_) throw ParameterError("index out of range");
  std::vector<Coord> coords(d_);
  for (std::size_t c = 0; c < d_; ++c) {
    coords[c] = static_cast<Coord>(idx % n_);
    idx /= n_;
  }
  return Point(std::move(coords));
}

}  // namespace unate
