#include "qes/rng.hpp"

#include <cmath>
#include <numbers>

namespace qes {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline Philox4x32::Counter round(const Philox4x32::Counter& c, const Philox4x32::Key& k) noexcept {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    ctr = round(ctr, key);
  }
  return ctr;
}

CounterStream::CounterStream(SeedSpec seed) noexcept
    : seed_(seed),
      key_{static_cast<std::uint32_t>(seed.master_seed),
           static_cast<std::uint32_t>(seed.master_seed >> 32)} {}

void CounterStream::refill() noexcept {
  const Philox4x32::Counter ctr{
      static_cast<std::uint32_t>(block_index_), static_cast<std::uint32_t>(block_index_ >> 32),
      static_cast<std::uint32_t>(seed_.stream_id), static_cast<std::uint32_t>(seed_.stream_id >> 32)};
  buffer_ = Philox4x32::block(ctr, key_);
  ++block_index_;
  words_left_ = 4;
}

CounterStream::result_type CounterStream::operator()() noexcept {
  if (words_left_ < 2) refill();
  const int at = 4 - words_left_;
  words_left_ -= 2;
  return (static_cast<std::uint64_t>(buffer_[at + 1]) << 32) | buffer_[at];
}

double CounterStream::uniform() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterStream::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

}  // namespace qes
