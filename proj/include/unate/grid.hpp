#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace unate {

using Index = std::uint64_t;
using Value = std::int64_t;
using Coord = std::uint32_t;

/// A point of [n]^d. Coordinates are 0-indexed, each in {0, ..., n-1}.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Coord> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Coord> coords) : coords_(coords) {}

  std::size_t size() const noexcept { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }
  Coord& operator[](std::size_t i) { return coords_[i]; }
  std::span<const Coord> coords() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<Coord> coords_;
};

std::string to_string(const Point& x);

/// The domain [n]^d; a hypercube when n = 2.
///
/// Points map to linear indices by mixed-radix encoding with coordinate 0
/// least significant, so index = sum_c x_c * n^c. For the hypercube this is
/// the usual bit encoding, and for n a power of two it coincides with the
/// value of the concatenated binary representations of the coordinates.
class GridShape {
 public:
  /// Largest supported domain size.
  static constexpr Index kMaxSize = Index{1} << 62;

  GridShape(std::uint32_t n, std::uint32_t d);
  static GridShape hypercube(std::uint32_t d) { return GridShape(2, d); }

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t d() const noexcept { return d_; }
  Index size() const noexcept { return size_; }
  bool is_hypercube() const noexcept { return n_ == 2; }

  /// n^i: distance in index space between neighbours along dimension i.
  Index stride(std::size_t i) const { return strides_[i]; }
  /// Number of i-lines, n^(d-1).
  Index line_count() const noexcept { return size_ / n_; }

  bool contains(const Point& x) const noexcept;
  Index index_of(const Point& x) const;
  Point point_at(Index idx) const;
  Coord coord(Index idx, std::size_t i) const noexcept {
    return static_cast<Coord>((idx / strides_[i]) % n_);
  }

  /// Index of the first point (coordinate i = 0) of the line-th i-line.
  Index line_base(std::size_t i, Index line) const noexcept {
    const Index lower = line % strides_[i];
    const Index upper = line / strides_[i];
    return upper * strides_[i] * n_ + lower;
  }

  friend bool operator==(const GridShape& a, const GridShape& b) noexcept {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }

 private:
  std::uint32_t n_;
  std::uint32_t d_;
  Index size_;
  std::vector<Index> strides_;
};

}  // namespace unate
