#include "qes/sampler.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "qes/errors.hpp"

namespace qes {
namespace {

template <std::size_t N>
bool degenerate(const std::array<double, N>& x) noexcept {
  for (double v : x) {
    if (std::abs(v) >= kDegenerateDraw) return false;
  }
  return true;
}

template <std::size_t N>
std::array<double, N> gaussian_direction(CounterStream& rng) noexcept {
  std::array<double, N> x;
  do {
    for (auto& v : x) v = rng.normal();
  } while (degenerate(x));
  double n2 = 0.0;
  for (double v : x) n2 += v * v;
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& v : x) v *= inv;
  return x;
}

}  // namespace

std::string_view to_string(EnsembleKind kind) noexcept {
  switch (kind) {
    case EnsembleKind::RealS3: return "real-s3";
    case EnsembleKind::ComplexS7: return "complex-s7";
    case EnsembleKind::Param: return "param";
    case EnsembleKind::ZeroMIFamily: return "zero-mi";
  }
  return "unknown";
}

std::optional<EnsembleKind> parse_ensemble_kind(std::string_view name) noexcept {
  for (auto k : {EnsembleKind::RealS3, EnsembleKind::ComplexS7, EnsembleKind::Param,
                 EnsembleKind::ZeroMIFamily}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

void validate(const EnsembleSpec& spec) {
  if (spec.n < 1) throw Error(ErrorKind::DomainError, "ensemble size must be at least 1");
}

TwoQubitPureState RealS3Sampler::next_state() {
  const auto x = gaussian_direction<4>(rng_);
  return make_state(x[0], x[1], x[2], x[3], Normalize::No);
}

TwoQubitPureState ComplexS7Sampler::next_state() {
  const auto x = gaussian_direction<8>(rng_);
  return make_state({x[0], x[1]}, {x[2], x[3]}, {x[4], x[5]}, {x[6], x[7]}, Normalize::No);
}

ParamState ParamSampler::next() {
  ParamState p;
  p.y = rng_.uniform();
  p.alpha = 2.0 * std::numbers::pi * rng_.uniform();
  p.beta = 2.0 * std::numbers::pi * rng_.uniform();
  return p;
}

TwoQubitPureState zero_mi_state(double p, double q, double r, double s) {
  const double left = std::hypot(p, r);
  const double right = std::hypot(q, s);
  if (!(left > 0.0) || !(right > 0.0)) {
    throw Error(ErrorKind::ZeroVector, "zero-MI family needs nonzero (p, r) and (q, s)");
  }
  p /= left;
  r /= left;
  q /= right;
  s /= right;
  return make_state(p * q, p * s, r * q, -r * s, Normalize::No);
}

TwoQubitPureState ZeroMiFamilySampler::next_state() {
  const auto left = gaussian_direction<2>(rng_);
  const auto right = gaussian_direction<2>(rng_);
  return zero_mi_state(left[0], right[0], left[1], right[1]);
}

}  // namespace qes
