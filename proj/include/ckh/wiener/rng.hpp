#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace ckh {

// xoshiro256** 1.0 (Blackman and Vigna), state filled by splitmix64 from a
// 64-bit seed. jump() advances by 2^128 draws and yields independent
// substreams for parallel chunks.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;
  static constexpr std::string_view name = "xoshiro256**";

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();
  void jump();

  // Generator for substream `index` of `seed`: the seeded state jumped
  // `index` times.
  static Xoshiro256 substream(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t s_[4];
};

// Default seed, overridable through the CKH_SEED environment variable.
std::uint64_t default_seed();

}  // namespace ckh
