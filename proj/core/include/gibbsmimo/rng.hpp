#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace gibbsmimo {

// Identifies one independent pseudo-random stream.
struct RngSeed {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

// Derives a seed for a named sub-purpose (e.g. "gibbs", "noise") while keeping
// the stream index. Different labels give unrelated streams.
RngSeed derive_seed(RngSeed seed, std::string_view label);
RngSeed derive_seed(RngSeed seed, std::uint64_t label);

std::uint64_t splitmix64(std::uint64_t x);

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The key is
// the master seed, the upper 64 counter bits are the stream index and the
// lower 64 bits count blocks, so every (master, stream) pair is its own
// reproducible, platform-independent stream.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit Philox4x32(RngSeed seed, std::uint64_t first_block = 0);

  // Next block of four 32-bit words.
  Block next_block();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_;
};

// Draws uniforms, normals and indices from a Philox stream.
//
// Uniforms are (k + 0.5) * 2^-53 for a 53-bit integer k, so they lie strictly
// inside (0, 1). Normals use the Box-Muller transform on two such uniforms and
// cache the second variate.
class RandomStream {
 public:
  explicit RandomStream(RngSeed seed);

  std::uint64_t next_u64();
  double uniform();
  double normal();
  // Uniform integer in [0, bound); bound must be >= 1. Unbiased (rejection).
  std::size_t uniform_index(std::size_t bound);
  bool coin();

 private:
  Philox4x32 engine_;
  Philox4x32::Block buffer_{};
  int buffered_words_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;

  std::uint32_t next_u32();
};

}  // namespace gibbsmimo
