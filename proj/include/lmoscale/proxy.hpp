// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

// Convergence bound of the momentum LMO method and the proxy objectives built
// from it. Everything here is a pure function of its arguments.
//
// Notation used in comments: K iterations, b batch size, T = bK tokens,
// alpha = 1 - beta (beta the momentum coefficient).

#pragma once

#include <cmath>

#include "lmoscale/errors.hpp"

namespace lmoscale {

/// Problem constants of the bound: initial suboptimality, smoothness, noise
/// scale and norm-equivalence constant. The proxy constants c1, c2, c3 are
/// derived from them.
template <typename Scalar = double>
class BoundConstants {
 public:
  BoundConstants(Scalar delta0, Scalar smoothness, Scalar noise_scale, Scalar norm_equiv = Scalar(1))
      : delta0_(delta0), smoothness_(smoothness), noise_scale_(noise_scale), norm_equiv_(norm_equiv) {
    using std::isfinite;
    detail::require(isfinite(delta0) && delta0 > 0, "delta0 must be positive and finite");
    detail::require(isfinite(smoothness) && smoothness > 0, "smoothness must be positive and finite");
    detail::require(isfinite(noise_scale) && noise_scale >= 0, "noise_scale must be nonnegative and finite");
    detail::require(isfinite(norm_equiv) && norm_equiv >= 1, "norm_equiv must be >= 1");
  }

  /// Constants reproducing prescribed proxy constants (c1, c2, c3) with rho = 1.
  static BoundConstants from_proxy(Scalar c1, Scalar c2, Scalar c3) {
    return BoundConstants(c1, c3 / Scalar(4), c2 / Scalar(2), Scalar(1));
  }

  Scalar delta0() const { return delta0_; }
  Scalar smoothness() const { return smoothness_; }
  Scalar noise_scale() const { return noise_scale_; }
  Scalar norm_equiv() const { return norm_equiv_; }
  Scalar rho_sigma() const { return norm_equiv_ * noise_scale_; }

  Scalar c1() const { return delta0_; }
  Scalar c2() const { return Scalar(2) * norm_equiv_ * noise_scale_; }
  Scalar c3() const { return Scalar(4) * smoothness_; }

 private:
  Scalar delta0_;
  Scalar smoothness_;
  Scalar noise_scale_;
  Scalar norm_equiv_;
};

/// A hyperparameter point. The batch is continuous here; the simulator rounds.
template <typename Scalar = double>
struct HyperParams {
  Scalar eta;
  Scalar alpha;
  Scalar batch;
};

template <typename Scalar>
void validate(const HyperParams<Scalar>& h) {
  using std::isfinite;
  detail::require(isfinite(h.eta) && h.eta > 0, "eta must be positive and finite");
  detail::require(isfinite(h.alpha) && h.alpha > 0 && h.alpha <= 1, "alpha must lie in (0, 1]");
  detail::require(isfinite(h.batch) && h.batch >= 1, "batch must be >= 1");
}

enum class BudgetKind { Iterations, Tokens };

template <typename Scalar = double>
struct Budget {
  BudgetKind kind;
  Scalar value;

  static Budget iterations(Scalar k) { return {BudgetKind::Iterations, k}; }
  static Budget tokens(Scalar t) { return {BudgetKind::Tokens, t}; }

  /// Iteration count implied by this budget at batch size b.
  Scalar iterations_at(Scalar b) const { return kind == BudgetKind::Iterations ? value : value / b; }
};

template <typename Scalar>
void validate(const Budget<Scalar>& budget) {
  using std::isfinite;
  detail::require(isfinite(budget.value) && budget.value >= 1, "budget must be >= 1");
}

namespace detail {

template <typename Scalar>
void require_iterations(Scalar k) {
  using std::isfinite;
  require(isfinite(k) && k >= 1, "iteration count must be >= 1");
}

template <typename Scalar>
void require_tokens(Scalar t, Scalar batch) {
  using std::isfinite;
  require(isfinite(t), "token count must be finite");
  if (!(t >= batch)) throw BudgetTooSmall("token budget smaller than one batch (need T >= b)");
}

}  // namespace detail

/// Right-hand side of the non-convex LMO bound with its exact coefficients:
///   D0/(eta K) + 2 rho sigma/(alpha sqrt(b) K) + 2 rho sigma sqrt(alpha/b) + 7 L eta/2 + 2 L eta/alpha.
template <typename Scalar>
Scalar bound_rhs(const BoundConstants<Scalar>& c, const HyperParams<Scalar>& h, Scalar k) {
  using std::sqrt;
  validate(h);
  detail::require_iterations(k);
  const Scalar rs2 = Scalar(2) * c.rho_sigma();
  const Scalar L = c.smoothness();
  return c.delta0() / (h.eta * k) + rs2 / (h.alpha * sqrt(h.batch) * k) + rs2 * sqrt(h.alpha / h.batch) +
         Scalar(7) * L * h.eta / Scalar(2) + Scalar(2) * L * h.eta / h.alpha;
}

/// Iteration-budget proxy: c1/(eta K) + (c2/sqrt b)(1 + alpha^{3/2} K)/(alpha K) + c3 eta (1 + 1/alpha).
template <typename Scalar>
Scalar risk_k(const BoundConstants<Scalar>& c, const HyperParams<Scalar>& h, Scalar k) {
  using std::sqrt;
  validate(h);
  detail::require_iterations(k);
  const Scalar a32 = h.alpha * sqrt(h.alpha);
  return c.c1() / (h.eta * k) + (c.c2() / sqrt(h.batch)) * (Scalar(1) + a32 * k) / (h.alpha * k) +
         c.c3() * h.eta * (Scalar(1) + Scalar(1) / h.alpha);
}

/// Token-budget proxy, risk_k with K = T/b substituted.
template <typename Scalar>
Scalar risk_t(const BoundConstants<Scalar>& c, const HyperParams<Scalar>& h, Scalar t) {
  using std::sqrt;
  validate(h);
  detail::require_tokens(t, h.batch);
  const Scalar b = h.batch;
  const Scalar a32 = h.alpha * sqrt(h.alpha);
  return c.c1() * b / (h.eta * t) + (c.c2() / sqrt(b)) * (b + a32 * t) / (h.alpha * t) +
         c.c3() * h.eta * (Scalar(1) + Scalar(1) / h.alpha);
}

/// Large-horizon proxy at fixed momentum (burn-in part dropped):
///   c1/(eta K) + c2 sqrt(alpha)/sqrt(b) + c3 (1 + 1/alpha) eta,  K from the budget.
template <typename Scalar>
Scalar risk_simplified(const BoundConstants<Scalar>& c, Scalar eta, Scalar b, const Budget<Scalar>& budget,
                       Scalar alpha) {
  using std::sqrt;
  validate(HyperParams<Scalar>{eta, alpha, b});
  validate(budget);
  if (budget.kind == BudgetKind::Tokens) {
    detail::require_tokens(budget.value, b);
  }
  const Scalar k = budget.iterations_at(b);
  const Scalar c2t = c.c2() * sqrt(alpha);
  const Scalar c3t = c.c3() * (Scalar(1) + Scalar(1) / alpha);
  return c.c1() / (eta * k) + c2t / sqrt(b) + c3t * eta;
}

/// The burn-in term c2/(alpha sqrt(b) K) that risk_simplified drops; equals risk_k - risk_simplified.
template <typename Scalar>
Scalar simplified_gap(const BoundConstants<Scalar>& c, const HyperParams<Scalar>& h, Scalar k) {
  using std::sqrt;
  validate(h);
  detail::require_iterations(k);
  return c.c2() / (h.alpha * sqrt(h.batch) * k);
}

/// Exact bound in token form: b D0/(eta T) + 2 rho sigma sqrt(b)/(alpha T) + 2 rho sigma sqrt(alpha/b)
///   + 7 L eta/2 + 2 L eta/alpha.
template <typename Scalar>
Scalar u_token_exact(const BoundConstants<Scalar>& c, const HyperParams<Scalar>& h, Scalar t) {
  using std::sqrt;
  validate(h);
  detail::require_tokens(t, h.batch);
  const Scalar b = h.batch;
  const Scalar rs2 = Scalar(2) * c.rho_sigma();
  const Scalar L = c.smoothness();
  return b * c.delta0() / (h.eta * t) + rs2 * sqrt(b) / (h.alpha * t) + rs2 * sqrt(h.alpha / b) +
         Scalar(7) * L * h.eta / Scalar(2) + Scalar(2) * L * h.eta / h.alpha;
}

}  // namespace lmoscale
