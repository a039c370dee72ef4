#pragma once

#include <bit>
#include <cstdint>

#include "unate/grid.hpp"

namespace unate {

// Bit-order conventions, in one place.
//
// Coordinates are 0-indexed. A 1-indexed coordinate b of the mathematical
// description is stored as coordinate b - 1.
//
//   val(z_p ... z_1) = sum_i z_i 2^(i-1)
//       For a hypercube point x this is exactly its linear index: coordinate c
//       (1-indexed c + 1) is bit c.
//   bin(z), z in {0..n-1}, n = 2^l
//       The l-bit vector of z, least significant bit first.
//   phi(y) = bin(y_1) ... bin(y_d)
//       Concatenation into a point of {0,1}^(d*l). Its val is the mixed-radix
//       index of y, so phi is the identity on linear indices.
//   psi(a) = [a >= n/2]
//       0-indexed form of "a > n/2" on {1..n}.
//   Psi(x) = (psi(x_1), ..., psi(x_d)).

constexpr bool is_power_of_two(std::uint64_t v) noexcept { return std::has_single_bit(v); }
constexpr unsigned log2_exact(std::uint64_t v) noexcept {
  return static_cast<unsigned>(std::countr_zero(v));
}

/// val() of a hypercube point.
Index binary_value(const Point& x);

/// phi(y) for y in [n]^d, n a power of two.
Point phi(const GridShape& grid, const Point& y);

constexpr Coord psi(Coord a, std::uint32_t n) noexcept { return a >= n / 2 ? 1u : 0u; }

/// Hypercube index of Psi(point at `idx`) for a grid with n a power of two.
Index psi_index(const GridShape& grid, Index idx);

}  // namespace unate
