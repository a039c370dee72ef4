#include "unate/rng.hpp"

namespace unate {

namespace {

std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::seed_seq seq{lo32(seed), hi32(seed)};
  engine_.seed(seq);
}

Rng Rng::derive(std::uint64_t master, std::uint64_t stream, std::uint64_t substream) {
  // The leading tag keeps derived streams disjoint from Rng(seed).
  std::seed_seq seq{0x756e6174u, lo32(master), hi32(master), lo32(stream),
                    hi32(stream), lo32(substream), hi32(substream)};
  return Rng(engine_type(seq));
}

}  // namespace unate
