#include "qes/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qes {
namespace {

// Slack when comparing bin centers against slice edges.
constexpr double kEdgeSlack = 1e-9;

std::size_t bin_count(double delta) {
  return static_cast<std::size_t>(std::ceil(1.0 / delta - kEdgeSlack));
}

// Multiplier that maps a value onto its bin index. When 1/delta is an
// integer up to rounding (0.01, 0.0025, ...) the exact integer is used so
// that values sitting on an edge, like 0.3 with delta 0.01, land in the
// upper bin.
double index_scale(double delta) {
  const double inv = 1.0 / delta;
  const double rounded = std::round(inv);
  return std::abs(inv - rounded) < kEdgeSlack * rounded ? rounded : inv;
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw Error(ErrorKind::DomainError, "bin width must lie in (0, 1]");
  }
}

void check_interval(double lo, double hi) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) {
    throw Error(ErrorKind::DomainError, "slice bounds must satisfy 0 <= lo < hi <= 1");
  }
}

// Bins on `axis` selected by the slice [lo, hi].
std::pair<std::size_t, std::size_t> slice_bins(const Joint2DHistogram& h, Axis axis, double lo,
                                               double hi) {
  const std::size_t n = h.bins(axis);
  std::size_t first = n, last = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double center = h.bin_center(axis, k);
    if (center >= lo - kEdgeSlack && center <= hi + kEdgeSlack) {
      first = std::min(first, k);
      last = k;
    }
  }
  if (first == n) {
    const std::size_t k = h.bin_index(axis, 0.5 * (lo + hi));
    return {k, k};
  }
  return {first, last};
}

Density1D normalized(Axis axis, double delta, std::vector<double> weights, const char* what) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (sum <= 0.0) throw Error(ErrorKind::EmptySlice, what);
  for (auto& w : weights) w /= sum * delta;
  return Density1D{axis, delta, std::move(weights)};
}

}  // namespace

Joint2DHistogram::Joint2DHistogram(double delta_c, double delta_i)
    : delta_c_(delta_c), delta_i_(delta_i) {
  check_delta(delta_c);
  check_delta(delta_i);
  scale_c_ = index_scale(delta_c);
  scale_i_ = index_scale(delta_i);
  bins_c_ = bin_count(delta_c);
  bins_i_ = bin_count(delta_i);
  counts_.assign(bins_c_ * bins_i_, 0);
}

void Joint2DHistogram::add_count(std::size_t c_bin, std::size_t i_bin, std::uint64_t n) {
  if (c_bin >= bins_c_ || i_bin >= bins_i_) {
    throw Error(ErrorKind::OutOfRange, "bin index outside the histogram");
  }
  counts_[c_bin * bins_i_ + i_bin] += n;
  total_ += n;
}

Joint2DHistogram& Joint2DHistogram::merge(const Joint2DHistogram& other) {
  if (delta_c_ != other.delta_c_ || delta_i_ != other.delta_i_) {
    throw Error(ErrorKind::ShapeMismatch, "cannot merge histograms with different bin widths");
  }
  for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
  total_ += other.total_;
  return *this;
}

Joint2DHistogram merge(Joint2DHistogram lhs, const Joint2DHistogram& rhs) {
  lhs.merge(rhs);
  return lhs;
}

double Density1D::integral() const noexcept {
  return std::accumulate(values.begin(), values.end(), 0.0) * delta;
}

std::size_t Density1D::argmax() const noexcept {
  // max_element returns the first maximum, i.e. the lowest bin on ties.
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

double joint_density(const Joint2DHistogram& h, std::size_t c_bin, std::size_t i_bin) {
  if (h.empty()) throw Error(ErrorKind::EmptyHistogram, "histogram has no counts");
  return static_cast<double>(h.count(c_bin, i_bin)) /
         (static_cast<double>(h.total()) * h.delta_c() * h.delta_i());
}

Density1D marginal(const Joint2DHistogram& h, Axis axis) {
  if (h.empty()) throw Error(ErrorKind::EmptyHistogram, "histogram has no counts");
  std::vector<double> sums(h.bins(axis), 0.0);
  for (std::size_t ci = 0; ci < h.bins_c(); ++ci) {
    for (std::size_t ii = 0; ii < h.bins_i(); ++ii) {
      sums[axis == Axis::C ? ci : ii] += static_cast<double>(h.count(ci, ii));
    }
  }
  const double norm = static_cast<double>(h.total()) * h.delta(axis);
  for (auto& s : sums) s /= norm;
  return Density1D{axis, h.delta(axis), std::move(sums)};
}

Density1D conditional_slice(const Joint2DHistogram& h, double i_lo, double i_hi) {
  check_interval(i_lo, i_hi);
  const auto [first, last] = slice_bins(h, Axis::I, i_lo, i_hi);
  std::vector<double> weights(h.bins_c(), 0.0);
  for (std::size_t ci = 0; ci < h.bins_c(); ++ci) {
    for (std::size_t ii = first; ii <= last; ++ii) weights[ci] += static_cast<double>(h.count(ci, ii));
  }
  return normalized(Axis::C, h.delta_c(), std::move(weights), "no counts in the I slice");
}

Density1D conditional_slice_given_c(const Joint2DHistogram& h, double c_lo, double c_hi) {
  check_interval(c_lo, c_hi);
  const auto [first, last] = slice_bins(h, Axis::C, c_lo, c_hi);
  std::vector<double> weights(h.bins_i(), 0.0);
  for (std::size_t ci = first; ci <= last; ++ci) {
    for (std::size_t ii = 0; ii < h.bins_i(); ++ii) weights[ii] += static_cast<double>(h.count(ci, ii));
  }
  return normalized(Axis::I, h.delta_i(), std::move(weights), "no counts in the C slice");
}

SliceStats slice_stats(const Joint2DHistogram& h, double i_center, double i_halfwidth) {
  if (!(i_halfwidth > 0.0)) throw Error(ErrorKind::DomainError, "slice half-width must be positive");
  const double lo = std::max(0.0, i_center - i_halfwidth);
  const double hi = std::min(1.0, i_center + i_halfwidth);
  check_interval(lo, hi);
  const auto [first, last] = slice_bins(h, Axis::I, lo, hi);

  SliceStats out;
  out.i_center = i_center;
  out.i_halfwidth = i_halfwidth;

  std::vector<std::uint64_t> column(h.bins_c(), 0);
  for (std::size_t ci = 0; ci < h.bins_c(); ++ci) {
    for (std::size_t ii = first; ii <= last; ++ii) column[ci] += h.count(ci, ii);
    out.count += column[ci];
  }
  if (out.count == 0) throw Error(ErrorKind::EmptySlice, "no counts in the I slice");

  const auto peak = std::max_element(column.begin(), column.end());
  out.c_star = h.bin_center(Axis::C, static_cast<std::size_t>(peak - column.begin()));

  const double n = static_cast<double>(out.count);
  double sum = 0.0;
  for (std::size_t ci = 0; ci < column.size(); ++ci) {
    sum += static_cast<double>(column[ci]) * h.bin_center(Axis::C, ci);
  }
  out.mean_c = sum / n;
  double sq = 0.0;
  for (std::size_t ci = 0; ci < column.size(); ++ci) {
    const double dev = h.bin_center(Axis::C, ci) - out.mean_c;
    sq += static_cast<double>(column[ci]) * dev * dev;
  }
  out.std_c = std::sqrt(sq / n);
  return out;
}

std::optional<std::size_t> off_zero_peak(const Density1D& d) {
  const auto& v = d.values;
  std::optional<std::size_t> best;
  for (std::size_t k = 1; k < v.size(); ++k) {
    const bool rises = v[k] > v[k - 1];
    const bool holds = k + 1 == v.size() || v[k] >= v[k + 1];
    if (rises && holds && (!best || v[k] > v[*best])) best = k;
  }
  return best;
}

}  // namespace qes
