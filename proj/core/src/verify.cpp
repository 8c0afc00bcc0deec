#include "qes/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "json.hpp"
#include "qes/curves.hpp"
#include "qes/ensemble_run.hpp"

namespace qes {
namespace {

struct Tally {
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  double worst = -std::numeric_limits<double>::infinity();

  void record(double value, bool violated) {
    ++samples;
    if (violated) ++violations;
    worst = std::max(worst, value);
  }
  void merge(const Tally& o) {
    samples += o.samples;
    violations += o.violations;
    worst = std::max(worst, o.worst);
  }
};

VerificationReport to_report(std::string name, const Tally& t) {
  return VerificationReport{std::move(name), t.samples, t.violations, t.samples ? t.worst : 0.0,
                            t.violations == 0};
}

// Runs `per_state(tally, state)` over n states of `kind` on the chunked runner.
template <class PerState>
Tally sampled_tally(std::uint64_t n, SeedSpec seed, EnsembleKind kind, unsigned workers, PerState per_state) {
  validate(EnsembleSpec{kind, n, seed});
  auto partials = run_chunks(n, seed, workers, Tally{}, [&](Tally& t, const ChunkRange& chunk) {
    visit_sampler(kind, chunk.seed, [&](auto& sampler) {
      for (std::uint64_t j = 0; j < chunk.count; ++j) per_state(t, sampler.next_state());
    });
  });
  Tally total;
  for (const auto& p : partials) total.merge(p);
  return total;
}

std::string suffixed(const char* base, EnsembleKind kind) {
  return std::string(base) + ":" + std::string(to_string(kind));
}

}  // namespace

VerificationReport check_bound(std::uint64_t n, SeedSpec seed, EnsembleKind kind, unsigned workers) {
  const Tally t = sampled_tally(n, seed, kind, workers, [](Tally& tally, const TwoQubitPureState& s) {
    const auto [c, i] = observe(s);
    const double excess = i.value - entanglement_from_concurrence(c).value;
    tally.record(excess, excess > kBoundSlack);
  });
  return to_report(suffixed("bound", kind), t);
}

VerificationReport check_appendix(std::uint64_t n, SeedSpec seed, unsigned workers) {
  const Tally t = sampled_tally(n, seed, EnsembleKind::ZeroMIFamily, workers,
                                [](Tally& tally, const TwoQubitPureState& s) {
                                  const double i = mutual_information(measure(s)).value;
                                  tally.record(i, i > kZeroMiTolerance);
                                });
  return to_report("appendix", t);
}

VerificationReport check_param_oracle(std::uint64_t n, SeedSpec seed) {
  validate(EnsembleSpec{EnsembleKind::Param, n, seed});
  CounterStream rng(seed);
  Tally t;
  for (std::uint64_t k = 0; k < n; ++k) {
    const double alpha = 2.0 * std::numbers::pi * rng.uniform();
    const double delta = 2.0 * std::numbers::pi * rng.uniform();
    const double direct = mi_param(alpha, delta).value;
    const double pipeline = mutual_information(measure(from_params({0.5, alpha, alpha - delta}))).value;
    const double diff = std::abs(direct - pipeline);
    t.record(diff, diff > kOracleTolerance);
  }
  return to_report("param-oracle", t);
}

VerificationReport check_extrema(std::uint64_t n, SeedSpec seed) {
  validate(EnsembleSpec{EnsembleKind::Param, n, seed});
  CounterStream rng(seed);
  Tally t;
  for (std::uint64_t k = 0; k < n; ++k) {
    const double delta = 2.0 * std::numbers::pi * rng.uniform();
    const double ridge = ridge_I(Concurrence{std::abs(std::sin(delta))}).value;
    for (int idx = -2; idx <= 2; ++idx) {
      const ExtremaSet e = extrema(delta, idx);
      const double at_min = mi_param(e.alpha_min, delta).value;
      const double at_max = std::abs(mi_param(e.alpha_max, delta).value - ridge);
      const double worst = std::max(at_min, at_max);
      t.record(worst, worst > kOracleTolerance);
    }
  }
  return to_report("extrema", t);
}

VerificationReport check_route_consistency(std::uint64_t n, SeedSpec seed, EnsembleKind kind, unsigned workers) {
  const Tally t = sampled_tally(n, seed, kind, workers, [](Tally& tally, const TwoQubitPureState& s) {
    const double diff =
        std::abs(entanglement_partial_trace(s).value - entanglement_from_concurrence(concurrence(s)).value);
    tally.record(diff, diff > kRouteTolerance);
  });
  return to_report(suffixed("route", kind), t);
}

VerificationReport check_polar_consistency(std::uint64_t n, SeedSpec seed, unsigned workers) {
  const Tally t = sampled_tally(n, seed, EnsembleKind::ComplexS7, workers,
                                [](Tally& tally, const TwoQubitPureState& s) {
                                  const double theta =
                                      std::arg(s.a()) + std::arg(s.d()) - std::arg(s.b()) - std::arg(s.c());
                                  const double polar =
                                      concurrence_polar({std::abs(s.a()), std::abs(s.b()), std::abs(s.c()),
                                                         std::abs(s.d())},
                                                        theta)
                                          .value;
                                  const double diff = std::abs(polar - concurrence(s).value);
                                  tally.record(diff, diff > kOracleTolerance);
                                });
  return to_report("polar", t);
}

VerificationReport check_ridge_empirical(const Joint2DHistogram& h) {
  if (h.total() < kRidgeMinSamples) {
    throw Error(ErrorKind::InsufficientData, "ridge check needs at least " + std::to_string(kRidgeMinSamples) +
                                                 " samples, histogram has " + std::to_string(h.total()));
  }
  Tally t;
  const double dc = h.delta_c();
  const double tolerance = 2.0 * h.delta_i();
  for (std::size_t ci = 0; ci < h.bins_c(); ++ci) {
    const double center = h.bin_center(Axis::C, ci);
    if (center < kRidgeColumnLo || center > kRidgeColumnHi) continue;
    const double expected = ridge_I(Concurrence{center}).value;
    const double lo = static_cast<double>(ci) * dc;
    const double hi = std::min(1.0, lo + dc);
    double distance = std::numeric_limits<double>::infinity();
    try {
      const Density1D column = conditional_slice_given_c(h, lo, hi);
      if (const auto peak = off_zero_peak(column)) distance = std::abs(column.bin_center(*peak) - expected);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptySlice) throw;
    }
    t.record(distance, !(distance <= tolerance));
  }
  return to_report("ridge", t);
}

void write_report_jsonl(std::ostream& os, const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["samples"] = report.samples;
  j["violations"] = report.violations;
  j["max_violation"] = report.max_violation;
  j["pass"] = report.pass;
  os << j.dump() << '\n';
}

}  // namespace qes
