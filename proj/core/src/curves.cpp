#include "qes/curves.hpp"

#include <cmath>

#include "qes/errors.hpp"

namespace qes {

EntropyBits mi_param(double alpha, double delta) noexcept {
  const double beta = alpha - delta;
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double c2a = ca * ca, s2a = sa * sa;
  const double c2b = cb * cb, s2b = sb * sb;

  const double right0 = 0.5 * (c2a + c2b);
  const double right1 = 0.5 * (s2a + s2b);
  double mi = 0.0 - xlog2x(right0) - xlog2x(right1) +
              0.5 * (xlog2x(c2a) + xlog2x(c2b) + xlog2x(s2a) + xlog2x(s2b));
  if (mi < 0.0) mi = 0.0;
  if (mi > 1.0) mi = 1.0;
  return EntropyBits{mi};
}

EntropyBits ridge_I(Concurrence c) {
  const double cv = c.value;
  if (!(cv >= 0.0 && cv <= 1.0)) {
    throw Error(ErrorKind::DomainError, "concurrence must lie in [0, 1]");
  }
  const double hi = 0.5 * (1.0 + cv);
  const double lo = 0.5 * (1.0 - cv);
  const double v = 1.0 + xlog2x(hi) + xlog2x(lo);
  return EntropyBits{v < 0.0 ? 0.0 : v};
}

Concurrence ridge_C(EntropyBits i, double tol) {
  const double target = i.value;
  if (!(target >= 0.0 && target <= 1.0)) {
    throw Error(ErrorKind::DomainError, "mutual information must lie in [0, 1]");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::DomainError, "tolerance must be positive");

  auto residual = [target](double c) { return ridge_I(Concurrence{c}).value - target; };

  double lo = 0.0, hi = 1.0;
  if (std::abs(residual(lo)) <= tol) return Concurrence{lo};
  if (std::abs(residual(hi)) <= tol) return Concurrence{hi};

  for (int it = 0; it < kRidgeInverseMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval exhausted at double resolution
    const double r = residual(mid);
    if (std::abs(r) <= tol) return Concurrence{mid};
    (r < 0.0 ? lo : hi) = mid;
  }
  const double rlo = std::abs(residual(lo));
  const double rhi = std::abs(residual(hi));
  const double best = rlo <= rhi ? lo : hi;
  if (std::min(rlo, rhi) <= tol) return Concurrence{best};
  throw Error(ErrorKind::ToleranceFailure, "ridge inverse did not reach the requested tolerance");
}

}  // namespace qes
