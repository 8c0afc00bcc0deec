#pragma once

// Counter-based random streams. A stream is addressed by (master_seed,
// stream_id): the master seed is the Philox key and the stream id occupies
// the upper half of the 128-bit counter, so distinct stream ids never share
// a counter value and any stream can be opened without coordinating with
// the others.

#include <array>
#include <cstdint>
#include <limits>

namespace qes {

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Philox4x32 with 10 rounds (Salmon et al., Random123).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept;
};

/// One random stream. Models std::uniform_random_bit_generator.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  explicit CounterStream(SeedSpec seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Standard normal via Box-Muller; pairs are cached.
  double normal() noexcept;

  const SeedSpec& seed() const noexcept { return seed_; }
  std::uint64_t blocks_consumed() const noexcept { return block_index_; }

 private:
  void refill() noexcept;

  SeedSpec seed_;
  Philox4x32::Key key_;
  std::uint64_t block_index_ = 0;
  Philox4x32::Counter buffer_{};
  int words_left_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qes
