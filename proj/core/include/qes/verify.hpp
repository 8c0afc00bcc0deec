#pragma once

// Sampled checks of the closed-form relations. Each check counts violations
// instead of stopping at the first one; a report passes iff it has none.
// max_violation holds the worst observed value of the checked quantity
// (I - E(C) for the bound, I for the zero-MI family, absolute differences
// for the cross-route checks, |peak - ridge| for the ridge check).

#include <cstdint>
#include <iosfwd>
#include <string>

#include "qes/histogram.hpp"
#include "qes/sampler.hpp"

namespace qes {

struct VerificationReport {
  std::string name;
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  double max_violation = 0.0;
  bool pass = true;
};

inline constexpr double kBoundSlack = 1e-9;
inline constexpr double kZeroMiTolerance = 1e-12;
inline constexpr double kOracleTolerance = 1e-12;
inline constexpr double kRouteTolerance = 1e-10;
inline constexpr std::uint64_t kRidgeMinSamples = 10'000'000;
inline constexpr double kRidgeColumnLo = 0.3;
inline constexpr double kRidgeColumnHi = 0.95;

/// I <= E(C) + kBoundSlack on n states of the given ensemble.
VerificationReport check_bound(std::uint64_t n, SeedSpec seed, EnsembleKind kind, unsigned workers = 1);

/// I <= kZeroMiTolerance on n states of the zero-MI family.
VerificationReport check_appendix(std::uint64_t n, SeedSpec seed, unsigned workers = 1);

/// |mi_param(alpha, delta) - pipeline MI| <= kOracleTolerance for n random
/// (alpha, delta) pairs, the pipeline state being from_params(1/2, alpha, alpha - delta).
VerificationReport check_param_oracle(std::uint64_t n, SeedSpec seed);

/// For n random delta and every index in {-2..2}: mi_param vanishes at
/// alpha_min and equals ridge_I(|sin delta|) at alpha_max, within kOracleTolerance.
VerificationReport check_extrema(std::uint64_t n, SeedSpec seed);

/// |entanglement_partial_trace - entanglement_from_concurrence(concurrence)| <= kRouteTolerance.
VerificationReport check_route_consistency(std::uint64_t n, SeedSpec seed, EnsembleKind kind,
                                           unsigned workers = 1);

/// concurrence_polar on the moduli and combined phase of complex states
/// agrees with concurrence within kOracleTolerance.
VerificationReport check_polar_consistency(std::uint64_t n, SeedSpec seed, unsigned workers = 1);

/// Off-zero peak of p(I | C-column) within 2 dI of ridge_I(C) for every
/// C-column centered in [0.3, 0.95]. InsufficientData below kRidgeMinSamples.
VerificationReport check_ridge_empirical(const Joint2DHistogram& h);

/// One JSON object per line: name, samples, violations, max_violation, pass.
void write_report_jsonl(std::ostream& os, const VerificationReport& report);

}  // namespace qes
