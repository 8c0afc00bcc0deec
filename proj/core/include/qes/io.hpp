#pragma once

// Text formats.
//
// Histogram CSV (sparse, nonzero bins only, row-major order):
//   # joint_histogram delta_c=<v> delta_i=<v> total=<n>
//   # ensemble=<kind> master_seed=<s> samples=<n>      (optional)
//   c_bin_index,i_bin_index,count
//   ...
// Density CSV: header `bin_center,density`, one row per bin.
// Doubles are written in shortest round-trip form.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "qes/histogram.hpp"
#include "qes/sampler.hpp"

namespace qes {

struct RunMetadata {
  EnsembleKind kind = EnsembleKind::RealS3;
  std::uint64_t master_seed = 0;
  std::uint64_t samples = 0;

  friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

struct HistogramFile {
  Joint2DHistogram histogram;
  std::optional<RunMetadata> metadata;
};

std::string format_double(double v);

void write_histogram_csv(std::ostream& os, const Joint2DHistogram& h,
                         const std::optional<RunMetadata>& meta = std::nullopt);

/// Parse error (ErrorKind::Parse) on a malformed header, row or a total that
/// disagrees with the sum of the rows.
HistogramFile read_histogram_csv(std::istream& is);

/// Same content as the CSV form:
/// {"format":"joint_histogram","delta_c":..,"delta_i":..,"total":..,
///  "ensemble":..,"master_seed":..,"samples":..,"bins":[[c,i,count],...]}
void write_histogram_json(std::ostream& os, const Joint2DHistogram& h,
                          const std::optional<RunMetadata>& meta = std::nullopt);

void write_density_csv(std::ostream& os, const Density1D& d);

/// Header `i_center,c_star,mean_c,std_c,count`.
void write_slice_stats_csv(std::ostream& os, std::span<const SliceStats> rows);

}  // namespace qes
