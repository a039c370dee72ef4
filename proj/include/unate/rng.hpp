#pragma once

#include <cstdint>
#include <random>

namespace unate {

/// Seedable random source. Independent streams are derived from
/// (master seed, stream, substream) so trials can run in any order or in
/// parallel and still reproduce.
class Rng {
 public:
  using engine_type = std::mt19937_64;

  explicit Rng(std::uint64_t seed);

  static Rng derive(std::uint64_t master, std::uint64_t stream, std::uint64_t substream = 0);

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }
  bool coin() { return (engine_() >> 63) != 0; }
  /// Uniformly -1 or +1.
  int sign() { return coin() ? 1 : -1; }
  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  engine_type& engine() noexcept { return engine_; }

 private:
  explicit Rng(engine_type engine) : engine_(std::move(engine)) {}
  engine_type engine_;
};

}  // namespace unate
