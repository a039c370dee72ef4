#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "unate/function.hpp"
#include "unate/rng.hpp"

namespace unate {

/// Per-coordinate orientation: 0 = nondecreasing, 1 = nonincreasing.
using Orientation = std::vector<bool>;

Orientation random_orientation(std::uint32_t d, Rng& rng);

/// Random b-monotone function: a monotone function of the b-flipped
/// coordinates, built from nonnegative nondecreasing per-coordinate step tables
/// (with plateaus, so constant pairs occur) plus a product of two such tables.
Function gen_b_monotone(const GridShape& shape, const Orientation& b, Rng& rng);

// ---------------------------------------------------------------------------
// Hard hypercube distributions over {0,1}^(d + log2 d).
//
// The domain splits into m = d subcubes by the top log2 d coordinates. Each
// subcube i has an action dimension r_i drawn from a random set R of 2^k low
// dimensions. On subcube i
//
//   f(x) = sum_{c not in R} x_c 3^(c+1) + sign_i * x_{r_i} 3^(r_i + 1)
//
// with sign_i = alpha[r_i] for the unate (Yes) family and beta[i] for the No
// family. Dimensions are 0-indexed; the weight of coordinate c is 3^(c+1).

struct HardInstanceRecord {
  std::uint32_t d = 0;              ///< base dimension, a power of two >= 4
  std::uint32_t k = 0;              ///< |R| = 2^k, 1 <= k <= floor(log2(d) / 2)
  std::vector<std::uint32_t> R;     ///< sorted subset of {0..d-1}
  std::vector<std::uint32_t> r;     ///< action dimension per subcube, size m
  std::vector<int> alpha;           ///< +-1 per base dimension, size d
  std::vector<int> beta;            ///< +-1 per subcube, size m

  std::uint32_t log_d() const;
  std::uint32_t d_prime() const { return d + log_d(); }
  std::uint32_t m() const { return d; }
  GridShape shape() const { return GridShape::hypercube(d_prime()); }
  /// Subcube (0-indexed) containing the hypercube point with index x.
  std::size_t subcube_of(Index x) const { return static_cast<std::size_t>(x >> d); }

  /// Throws ParameterError unless every structural invariant holds.
  void validate() const;
};

enum class HardFamily { Yes, No };

/// Largest d' with every f_T / g_T value representable in 64 bits.
inline constexpr std::uint32_t kMaxHardDimension = 37;

HardInstanceRecord draw_hard_record(std::uint32_t d, Rng& rng);
/// Closed-form f_T (Yes) or g_T (No); no table is built.
Function hard_function(const HardInstanceRecord& record, HardFamily family);

std::pair<Function, HardInstanceRecord> gen_yes_sample(std::uint32_t d, Rng& rng);
std::pair<Function, HardInstanceRecord> gen_no_sample(std::uint32_t d, Rng& rng);

nlohmann::json to_json(const HardInstanceRecord& record);
HardInstanceRecord hard_record_from_json(const nlohmann::json& doc);

// ---------------------------------------------------------------------------
// Hypergrid family over [n]^d with n = 2^l, m = d l bits. With B = 2^(m'),
// m' = m - log2(1/eps) + 1, block S_k holds the points whose index lies in
// [(k-1) B, k B - 1]. Member (j, k), both 1-indexed:
//
//   g_jk(y) = 2 val - 2^j - 1   if bit j of val is set and y in S_k
//             2 val             otherwise,        val = index of y.
//
// The companion f(y) = 2 val is monotone.

struct GridLiftParams {
  std::uint32_t n = 4;
  std::uint32_t d = 1;
  double eps = 0.25;
  std::uint32_t j = 1;   ///< 1 <= j <= m'
  std::uint32_t k = 1;   ///< 1 <= k <= 1 / (2 eps)

  std::uint32_t ell() const;
  std::uint32_t m() const { return d * ell(); }
  std::uint32_t blocks() const;      ///< 1 / (2 eps)
  std::uint32_t m_prime() const;     ///< m - log2(1/eps) + 1
  /// Dimension (0-indexed) whose pairs carry bit j.
  std::size_t dimension() const { return (j - 1) / ell(); }

  void validate() const;
};

/// Largest admissible epsilon (1 / (2 eps) a power of two) not above eps.
double admissible_lift_epsilon(double eps);

Function lb_family_member(const GridLiftParams& params);
Function lb_family_companion(std::uint32_t n, std::uint32_t d);

/// f o Psi on [n]^d, n a power of two, f on {0,1}^d.
Function lift_hypercube_to_hypergrid(const Function& f, std::uint32_t n);

// ---------------------------------------------------------------------------

/// The min(c, #differing) most significant coordinates where x and y differ,
/// most significant (highest index) first.
std::vector<std::size_t> cap(const Point& x, const Point& y, std::size_t c);
/// Union of cap(x, y, c) over all pairs of distinct vectors in V.
std::set<std::size_t> cap_set(const std::vector<Point>& V, std::size_t c);

// ---------------------------------------------------------------------------

/// A generated function plus the parameter record that re-creates it.
struct Instance {
  Function function;
  nlohmann::json record;
  std::optional<HardInstanceRecord> hard;
};

/// Build an instance from a family spec:
///   {"family":"yes"|"no", "d":..., ["lift_n":...], [explicit record fields]}
///   {"family":"glift", "n":..., "d":..., "eps":..., "j":..., "k":..., ["member":"g"|"f"]}
///   {"family":"bmono", "n":..., "d":..., ["b":[0,1,...]]}
///   {"family":"constant", "n":..., "d":..., ["value":...]}
///   {"family":"dense", "n":..., "d":..., "values":[...]}
/// Missing random choices are drawn from rng; the returned record lists them
/// explicitly, so instantiate(record) reproduces the function without rng.
Instance instantiate(const nlohmann::json& spec, Rng& rng);

}  // namespace unate
