#pragma once

// Random pure-state ensembles. Every sampler owns one CounterStream and is
// single-owner; independent samplers may run on different threads.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "qes/rng.hpp"
#include "qes/state.hpp"

namespace qes {

enum class EnsembleKind { RealS3, ComplexS7, Param, ZeroMIFamily };

/// CLI spelling: real-s3, complex-s7, param, zero-mi.
std::string_view to_string(EnsembleKind kind) noexcept;
std::optional<EnsembleKind> parse_ensemble_kind(std::string_view name) noexcept;

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::RealS3;
  std::uint64_t n = 1;
  SeedSpec seed;
};

/// Throws DomainError unless n >= 1.
void validate(const EnsembleSpec& spec);

/// Magnitude below which every Gaussian component counts as a degenerate draw.
inline constexpr double kDegenerateDraw = 1e-12;

/// Uniform on the real unit 3-sphere: four standard normals over their norm.
class RealS3Sampler {
 public:
  explicit RealS3Sampler(SeedSpec seed) noexcept : rng_(seed) {}
  TwoQubitPureState next_state();

 private:
  CounterStream rng_;
};

/// Uniform on the complex unit sphere in C^4 (real S^7).
class ComplexS7Sampler {
 public:
  explicit ComplexS7Sampler(SeedSpec seed) noexcept : rng_(seed) {}
  TwoQubitPureState next_state();

 private:
  CounterStream rng_;
};

/// y ~ U[0,1), alpha, beta ~ U[0, 2 pi), independent.
class ParamSampler {
 public:
  explicit ParamSampler(SeedSpec seed) noexcept : rng_(seed) {}
  ParamState next();
  TwoQubitPureState next_state() { return from_params(next()); }

 private:
  CounterStream rng_;
};

/// State with amplitudes (pq, ps, rq, -rs) after rescaling (p, r) and (q, s)
/// to unit vectors. Its outcome distribution factorizes, so I = 0, while
/// C = 4|pqrs|. ZeroVector if either pair is zero.
TwoQubitPureState zero_mi_state(double p, double q, double r, double s);

/// zero_mi_state with (p, r) and (q, s) drawn uniformly on the unit circle.
class ZeroMiFamilySampler {
 public:
  explicit ZeroMiFamilySampler(SeedSpec seed) noexcept : rng_(seed) {}
  TwoQubitPureState next_state();

 private:
  CounterStream rng_;
};

/// Calls f with a freshly seeded concrete sampler for `kind`, so that loops
/// inside f are compiled per sampler type.
template <class F>
decltype(auto) visit_sampler(EnsembleKind kind, SeedSpec seed, F&& f) {
  switch (kind) {
    case EnsembleKind::ComplexS7: {
      ComplexS7Sampler s(seed);
      return std::forward<F>(f)(s);
    }
    case EnsembleKind::Param: {
      ParamSampler s(seed);
      return std::forward<F>(f)(s);
    }
    case EnsembleKind::ZeroMIFamily: {
      ZeroMiFamilySampler s(seed);
      return std::forward<F>(f)(s);
    }
    case EnsembleKind::RealS3:
    default: {
      RealS3Sampler s(seed);
      return std::forward<F>(f)(s);
    }
  }
}

}  // namespace qes
