// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>

#include "lmoscale/errors.hpp"

namespace lmoscale {

/// The depressed cubic a3 x^3 - a1 x - a0 with a3, a1, a0 > 0.
/// p(0) = -a0 < 0 and p is decreasing up to its single positive critical
/// point, so there is exactly one positive root.
template <typename Scalar = double>
struct CubicCoefficients {
  Scalar a3;
  Scalar a1;
  Scalar a0;

  Scalar operator()(Scalar x) const { return (a3 * x * x - a1) * x - a0; }
  Scalar derivative(Scalar x) const { return Scalar(3) * a3 * x * x - a1; }

  /// |p(x)| / a3, the residual of the monic form.
  Scalar normalized_residual(Scalar x) const {
    using std::abs;
    return abs((*this)(x)) / a3;
  }

  /// |p(x)| relative to the largest of the three terms at x.
  Scalar relative_residual(Scalar x) const {
    using std::abs;
    const Scalar scale = std::max({abs(a3 * x * x * x), abs(a1 * x), abs(a0)});
    return abs((*this)(x)) / scale;
  }
};

/// Bracket guaranteed to contain the positive root: p(lo) < 0 < p(hi).
template <typename Scalar>
std::pair<Scalar, Scalar> root_bracket(const CubicCoefficients<Scalar>& p) {
  using std::cbrt;
  using std::sqrt;
  const Scalar r0 = cbrt(p.a0 / p.a3);
  const Scalar r1 = sqrt(p.a1 / p.a3);
  return {r0 / Scalar(2), Scalar(2) * std::max(r0, r1)};
}

/// Unique positive root by bisection on the guaranteed bracket, polished by
/// safeguarded Newton steps.
template <typename Scalar>
Scalar positive_root(const CubicCoefficients<Scalar>& p) {
  using std::isfinite;
  detail::require(isfinite(p.a3) && p.a3 > 0, "cubic: a3 must be positive");
  detail::require(isfinite(p.a1) && p.a1 >= 0, "cubic: a1 must be nonnegative");
  detail::require(isfinite(p.a0) && p.a0 > 0, "cubic: a0 must be positive");

  auto [lo, hi] = root_bracket(p);
  if (!(p(lo) < 0 && p(hi) > 0)) throw NumericalError("cubic: root bracketing failed");

  for (int i = 0; i < 200; ++i) {
    const Scalar mid = lo + (hi - lo) / Scalar(2);
    if (mid <= lo || mid >= hi) break;
    if (p(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  Scalar x = lo + (hi - lo) / Scalar(2);
  for (int i = 0; i < 3; ++i) {
    const Scalar d = p.derivative(x);
    if (d <= 0) break;
    const Scalar next = x - p(x) / d;
    if (!(next >= lo && next <= hi)) break;
    x = next;
  }
  return x;
}

}  // namespace lmoscale
