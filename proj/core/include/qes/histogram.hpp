#pragma once

// Streaming joint histogram of (C, I) over [0,1]^2 with exact integer counts.
// Bins are half-open [k d, (k+1) d) except the last one on each axis, which
// is closed so that C = 1 and I = 1 land inside. A histogram is
// single-writer; parallel runs keep one per worker and merge at the end.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qes/errors.hpp"
#include "qes/state.hpp"

namespace qes {

enum class Axis { C, I };

class Joint2DHistogram {
 public:
  /// DomainError unless 0 < delta <= 1 on both axes.
  Joint2DHistogram(double delta_c, double delta_i);

  double delta_c() const noexcept { return delta_c_; }
  double delta_i() const noexcept { return delta_i_; }
  double delta(Axis axis) const noexcept { return axis == Axis::C ? delta_c_ : delta_i_; }
  std::size_t bins_c() const noexcept { return bins_c_; }
  std::size_t bins_i() const noexcept { return bins_i_; }
  std::size_t bins(Axis axis) const noexcept { return axis == Axis::C ? bins_c_ : bins_i_; }
  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }

  std::uint64_t count(std::size_t c_bin, std::size_t i_bin) const { return counts_.at(c_bin * bins_i_ + i_bin); }
  /// Row-major over (c_bin, i_bin).
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }

  double bin_center(Axis axis, std::size_t k) const noexcept {
    return (static_cast<double>(k) + 0.5) * delta(axis);
  }

  /// Bin holding v, after clamping round-off within kClampTolerance of
  /// [0, 1]. OutOfRange beyond that.
  std::size_t bin_index(Axis axis, double v) const;

  void accumulate(Concurrence c, EntropyBits i) {
    const std::size_t ci = bin_index(Axis::C, c.value);
    const std::size_t ii = bin_index(Axis::I, i.value);
    ++counts_[ci * bins_i_ + ii];
    ++total_;
  }
  void accumulate(const Observation& o) { accumulate(o.c, o.i); }

  /// Adds n counts to one bin; OutOfRange for an invalid index.
  void add_count(std::size_t c_bin, std::size_t i_bin, std::uint64_t n);

  /// Elementwise sum; ShapeMismatch unless both bin widths are identical.
  Joint2DHistogram& merge(const Joint2DHistogram& other);

  friend bool operator==(const Joint2DHistogram&, const Joint2DHistogram&) = default;

 private:
  double delta_c_;
  double delta_i_;
  double scale_c_;
  double scale_i_;
  std::size_t bins_c_;
  std::size_t bins_i_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

inline std::size_t Joint2DHistogram::bin_index(Axis axis, double v) const {
  if (!(v >= -kClampTolerance && v <= 1.0 + kClampTolerance)) {
    throw Error(ErrorKind::OutOfRange, "histogram value outside [0, 1]");
  }
  const std::size_t bins = axis == Axis::C ? bins_c_ : bins_i_;
  const double scaled = (v <= 0.0 ? 0.0 : v) * (axis == Axis::C ? scale_c_ : scale_i_);
  const auto k = static_cast<std::size_t>(scaled);
  return k < bins ? k : bins - 1;
}

Joint2DHistogram merge(Joint2DHistogram lhs, const Joint2DHistogram& rhs);

/// Piecewise-constant density on one axis; values[k] covers bin k.
struct Density1D {
  Axis axis = Axis::C;
  double delta = 0.0;
  std::vector<double> values;

  double bin_center(std::size_t k) const noexcept { return (static_cast<double>(k) + 0.5) * delta; }
  double integral() const noexcept;
  std::size_t argmax() const noexcept;
};

/// count / (total dC dI) for one bin.
double joint_density(const Joint2DHistogram& h, std::size_t c_bin, std::size_t i_bin);

/// p(C) or p(I). EmptyHistogram when total == 0.
Density1D marginal(const Joint2DHistogram& h, Axis axis);

/// p(C | i_lo <= I <= i_hi), using the I-bins whose centers fall in the
/// interval (or the single bin holding its midpoint when none does).
/// DomainError unless 0 <= i_lo < i_hi <= 1; EmptySlice without counts.
Density1D conditional_slice(const Joint2DHistogram& h, double i_lo, double i_hi);

/// p(I | c_lo <= C <= c_hi); mirror of conditional_slice.
Density1D conditional_slice_given_c(const Joint2DHistogram& h, double c_lo, double c_hi);

struct SliceStats {
  double i_center = 0.0;
  double i_halfwidth = 0.0;
  double c_star = 0.0;
  double mean_c = 0.0;
  double std_c = 0.0;
  std::uint64_t count = 0;
};

/// Peak, mean and standard deviation of C in the slice
/// [i_center - i_halfwidth, i_center + i_halfwidth] (clipped to [0,1]).
/// The peak is the center of the highest bin, lowest bin on ties; moments
/// use bin centers weighted by counts. EmptySlice if no counts fall inside.
SliceStats slice_stats(const Joint2DHistogram& h, double i_center, double i_halfwidth);

/// Largest strict local maximum of a density away from its first bin
/// (values[k] > values[k-1] and values[k] >= values[k+1], k >= 1).
std::optional<std::size_t> off_zero_peak(const Density1D& d);

}  // namespace qes
