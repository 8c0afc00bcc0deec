#include "qes/state.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "qes/errors.hpp"

namespace qes {
namespace {

// Squared norms below this are treated as the zero vector.
constexpr double kZeroSquaredNorm = 1e-24;

double clamp_unit(double v, const char* what) {
  if (v < 0.0) {
    if (v < -kClampTolerance) {
      std::ostringstream os;
      os << what << " = " << v << " is below 0 beyond round-off";
      throw Error(ErrorKind::InternalConsistency, os.str());
    }
    return 0.0;
  }
  if (v > 1.0) {
    if (v > 1.0 + kClampTolerance) {
      std::ostringstream os;
      os << what << " = " << v << " exceeds 1 beyond round-off";
      throw Error(ErrorKind::InternalConsistency, os.str());
    }
    return 1.0;
  }
  return v;
}

// Entropy of the two-point distribution (large, small) where the caller has
// computed the small weight without cancellation.
double binary_entropy(double large, double small) noexcept {
  return 0.0 - xlog2x(large) - xlog2x(small);
}

}  // namespace

double xlog2x(double p) noexcept { return p > 0.0 ? p * std::log2(p) : 0.0; }

double TwoQubitPureState::squared_norm() const noexcept {
  return std::norm(amp_[0]) + std::norm(amp_[1]) + std::norm(amp_[2]) + std::norm(amp_[3]);
}

bool TwoQubitPureState::is_real() const noexcept {
  for (const auto& z : amp_) {
    if (z.imag() != 0.0) return false;
  }
  return true;
}

TwoQubitPureState make_state(Amplitude a, Amplitude b, Amplitude c, Amplitude d,
                             Normalize normalize) {
  std::array<Amplitude, 4> amp{a, b, c, d};
  for (const auto& z : amp) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::DomainError, "amplitude is not finite");
    }
  }
  double n2 = 0.0;
  for (const auto& z : amp) n2 += std::norm(z);
  if (n2 < kZeroSquaredNorm) {
    throw Error(ErrorKind::ZeroVector, "all four amplitudes are zero");
  }
  if (normalize == Normalize::Yes) {
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& z : amp) z *= inv;
  } else if (std::abs(n2 - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "squared norm " << n2 << " differs from 1";
    throw Error(ErrorKind::NotNormalized, os.str());
  }
  return TwoQubitPureState(amp);
}

TwoQubitPureState from_params(const ParamState& p) {
  if (!(p.y >= 0.0 && p.y <= 1.0)) {
    throw Error(ErrorKind::DomainError, "y must lie in [0, 1]");
  }
  const double big_a = std::sqrt(p.y);
  const double big_b = std::sqrt(1.0 - p.y);
  // A^2 + B^2 = 1 exactly up to rounding of sqrt, well inside tolerance.
  return make_state(big_a * std::cos(p.alpha), big_a * std::sin(p.alpha),
                    big_b * std::cos(p.beta), big_b * std::sin(p.beta), Normalize::No);
}

OutcomeDistribution make_distribution(const std::array<double, 4>& p) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::DomainError, "probability outside [0, 1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::NotNormalized, "probabilities do not sum to 1");
  }
  return OutcomeDistribution{p};
}

OutcomeDistribution measure(const TwoQubitPureState& s) noexcept {
  return OutcomeDistribution{{std::norm(s.a()), std::norm(s.b()), std::norm(s.c()), std::norm(s.d())}};
}

EntropyBits shannon_total(const OutcomeDistribution& d) noexcept {
  double h = 0.0;
  for (double p : d.p) h -= xlog2x(p);
  return EntropyBits{h};
}

MarginalEntropies shannon_marginals(const OutcomeDistribution& d) noexcept {
  const auto& p = d.p;
  const double left = 0.0 - xlog2x(p[0] + p[1]) - xlog2x(p[2] + p[3]);
  const double right = 0.0 - xlog2x(p[0] + p[2]) - xlog2x(p[1] + p[3]);
  return {EntropyBits{left}, EntropyBits{right}};
}

EntropyBits mutual_information(const OutcomeDistribution& d) {
  const auto [left, right] = shannon_marginals(d);
  const double raw = left.value + right.value - shannon_total(d).value;
  return EntropyBits{clamp_unit(raw, "mutual information")};
}

Concurrence concurrence(const TwoQubitPureState& s) {
  const double c = 2.0 * std::abs(s.a() * s.d() - s.b() * s.c());
  return Concurrence{clamp_unit(c, "concurrence")};
}

Concurrence concurrence_polar(const std::array<double, 4>& moduli, double theta) {
  double n2 = 0.0;
  for (double m : moduli) {
    if (!(m >= 0.0)) throw Error(ErrorKind::DomainError, "moduli must be non-negative");
    n2 += m * m;
  }
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::NotNormalized, "squared moduli do not sum to 1");
  }
  const double ad = moduli[0] * moduli[3];
  const double bc = moduli[1] * moduli[2];
  // |ad|^2 + |bc|^2 - 2|abcd| cos(theta), rewritten without cancellation.
  const double diff = ad - bc;
  const double half_sin = std::sin(0.5 * theta);
  const double radicand = diff * diff + 4.0 * ad * bc * half_sin * half_sin;
  return Concurrence{clamp_unit(2.0 * std::sqrt(radicand), "concurrence")};
}

EntropyBits entanglement_from_concurrence(Concurrence c) {
  const double cv = c.value;
  if (!(cv >= 0.0 && cv <= 1.0)) {
    throw Error(ErrorKind::DomainError, "concurrence must lie in [0, 1]");
  }
  const double x = 0.5 * (1.0 + std::sqrt((1.0 - cv) * (1.0 + cv)));
  // x (1 - x) = C^2 / 4
  const double one_minus_x = 0.25 * cv * cv / x;
  return EntropyBits{binary_entropy(x, one_minus_x)};
}

EntropyBits entanglement_partial_trace(const TwoQubitPureState& s) {
  // rho_L = [[|a|^2 + |b|^2, a c* + b d*], [c a* + d b*, |c|^2 + |d|^2]]
  const double r00 = std::norm(s.a()) + std::norm(s.b());
  const double r11 = std::norm(s.c()) + std::norm(s.d());
  const Amplitude r01 = s.a() * std::conj(s.c()) + s.b() * std::conj(s.d());
  const double trace = r00 + r11;
  const double det = std::max(0.0, r00 * r11 - std::norm(r01));
  const double disc = std::max(0.0, trace * trace - 4.0 * det);
  const double lmax = 0.5 * (trace + std::sqrt(disc));
  const double lmin = det / lmax;
  return EntropyBits{binary_entropy(lmax, lmin)};
}

Observation observe(const TwoQubitPureState& s) {
  return Observation{concurrence(s), mutual_information(measure(s))};
}

}  // namespace qes
