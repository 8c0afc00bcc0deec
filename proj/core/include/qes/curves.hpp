#pragma once

// Closed-form curves for the (y = 1/2, alpha, beta = alpha - delta) slice of
// the real two-qubit state space, on which C = |sin(delta)| and H_L = 1.

#include <numbers>

#include "qes/state.hpp"

namespace qes {

/// Mutual information evaluated directly from the parametrized closed form,
/// independent of the measure()/mutual_information() pipeline.
EntropyBits mi_param(double alpha, double delta) noexcept;

/// Ridge curve: the nonzero most probable MI at concurrence C,
///   1 + (1+C)/2 log2((1+C)/2) + (1-C)/2 log2((1-C)/2).
/// Strictly increasing from (0, 0) to (1, 1). DomainError outside [0,1].
EntropyBits ridge_I(Concurrence c);

inline constexpr double kRidgeInverseTolerance = 1e-12;
inline constexpr int kRidgeInverseMaxIterations = 200;

/// Inverse of ridge_I by bisection on [0, 1]; |ridge_I(result) - i| <= tol.
/// DomainError for i outside [0,1] or tol <= 0, ToleranceFailure if the
/// bisection cannot reach tol.
Concurrence ridge_C(EntropyBits i, double tol = kRidgeInverseTolerance);

/// Stationary points of mi_param in alpha for fixed delta:
///   alpha_max = (delta + (n + 1/2) pi) / 2,  alpha_min = (delta + n pi) / 2.
struct ExtremaSet {
  double delta = 0.0;
  double alpha_max = 0.0;
  double alpha_min = 0.0;
  int n = 0;
};

constexpr ExtremaSet extrema(double delta, int n) noexcept {
  return ExtremaSet{delta, 0.5 * (delta + (n + 0.5) * std::numbers::pi),
                    0.5 * (delta + n * std::numbers::pi), n};
}

/// Upper bound I <= E(C); same function as entanglement_from_concurrence.
inline EntropyBits bound_E(Concurrence c) { return entanglement_from_concurrence(c); }

}  // namespace qes
