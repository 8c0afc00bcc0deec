#pragma once

// Per-state observables of a two-qubit pure state
//   |psi> = a|00> + b|01> + c|10> + d|11>
// measured in the local product basis. All entropies are in bits and use the
// convention 0 log 0 = 0.

#include <array>
#include <complex>
#include <compare>

namespace qes {

using Amplitude = std::complex<double>;

/// Tolerance on the squared norm of a state and on the probability simplex.
inline constexpr double kNormTolerance = 1e-12;

/// Round-off allowance for clamping quantities that must lie in [0, 1].
inline constexpr double kClampTolerance = 1e-12;

struct Concurrence {
  double value = 0.0;
  auto operator<=>(const Concurrence&) const = default;
};

struct EntropyBits {
  double value = 0.0;
  auto operator<=>(const EntropyBits&) const = default;
};

enum class Normalize { No, Yes };

class TwoQubitPureState {
 public:
  const Amplitude& a() const noexcept { return amp_[0]; }
  const Amplitude& b() const noexcept { return amp_[1]; }
  const Amplitude& c() const noexcept { return amp_[2]; }
  const Amplitude& d() const noexcept { return amp_[3]; }
  const std::array<Amplitude, 4>& amplitudes() const noexcept { return amp_; }

  double squared_norm() const noexcept;
  bool is_real() const noexcept;

  friend bool operator==(const TwoQubitPureState&, const TwoQubitPureState&) = default;

 private:
  explicit TwoQubitPureState(const std::array<Amplitude, 4>& amp) noexcept : amp_(amp) {}
  friend TwoQubitPureState make_state(Amplitude, Amplitude, Amplitude, Amplitude, Normalize);

  std::array<Amplitude, 4> amp_;
};

/// Builds a state from four amplitudes. With Normalize::Yes the vector is
/// rescaled to unit norm; with Normalize::No its squared norm must already
/// be 1 within kNormTolerance.
///
/// Throws ZeroVector if every amplitude is (numerically) zero, NotNormalized
/// on a norm mismatch, DomainError on a non-finite component.
TwoQubitPureState make_state(Amplitude a, Amplitude b, Amplitude c, Amplitude d,
                             Normalize normalize = Normalize::No);

/// (y, alpha, beta) with A = sqrt(y), B = sqrt(1 - y).
struct ParamState {
  double y = 0.5;
  double alpha = 0.0;
  double beta = 0.0;
};

/// a = A cos(alpha), b = A sin(alpha), c = B cos(beta), d = B sin(beta).
TwoQubitPureState from_params(const ParamState& p);

/// Outcome probabilities (P1..P4) of the projectors onto |00>,|01>,|10>,|11>.
struct OutcomeDistribution {
  std::array<double, 4> p{};
};

/// Validating constructor for hand-built distributions.
OutcomeDistribution make_distribution(const std::array<double, 4>& p);

OutcomeDistribution measure(const TwoQubitPureState& s) noexcept;

EntropyBits shannon_total(const OutcomeDistribution& d) noexcept;

struct MarginalEntropies {
  EntropyBits left;
  EntropyBits right;
};

MarginalEntropies shannon_marginals(const OutcomeDistribution& d) noexcept;

/// H_L + H_R - H_tot. Round-off below zero (down to -kClampTolerance) is
/// clamped; anything further out throws InternalConsistency.
EntropyBits mutual_information(const OutcomeDistribution& d);

/// 2|ad - bc|.
Concurrence concurrence(const TwoQubitPureState& s);

/// Concurrence from amplitude moduli and the combined phase
/// theta = theta_a + theta_d - theta_b - theta_c. Moduli must be
/// non-negative with unit squared sum (NotNormalized otherwise).
Concurrence concurrence_polar(const std::array<double, 4>& moduli, double theta);

/// Binary entropy of x(C) = (1 + sqrt(1 - C^2)) / 2. DomainError outside [0,1].
EntropyBits entanglement_from_concurrence(Concurrence c);

/// Von Neumann entropy of the left reduced density matrix, from the closed
/// form eigenvalues of the 2x2 Hermitian matrix.
EntropyBits entanglement_partial_trace(const TwoQubitPureState& s);

/// Concurrence and mutual information of one state; the sampling hot path.
struct Observation {
  Concurrence c;
  EntropyBits i;
};

Observation observe(const TwoQubitPureState& s);

/// p log2 p with 0 log 0 = 0.
double xlog2x(double p) noexcept;

}  // namespace qes
