// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

// Exact and asymptotic minimizers of the proxy objectives.
//
// Two constant conventions coexist and every result says which one it uses:
//   MainText   - proxy constants c1 = D0, c2 = 2 rho sigma, c3 = 4L, with the
//                eta terms collapsed to c3 eta (1 + 1/alpha);
//   ExactBound - the bound's own coefficients 7L/2 and 2L/alpha.

#pragma once

#include <optional>

#include "lmoscale/cubic.hpp"
#include "lmoscale/proxy.hpp"
#include "lmoscale/schedule.hpp"

namespace lmoscale {

enum class ProxyForm { MainText, ExactBound };

enum class OptimumRegime { IterationBudget, TokenBudgetFixedB, TokenBudgetJointB };

/// c2 sqrt(alpha), the noise-floor coefficient at fixed momentum.
double c2_tilde(const BoundConstants<>& c, double alpha);
/// c3 (1 + 1/alpha), the step-size coefficient at fixed momentum.
double c3_tilde(const BoundConstants<>& c, double alpha);

struct FixedMomentumOptimum {
  double eta_star;
  double b_star;  // the input batch for fixed-b regimes
  double risk_star;
  OptimumRegime regime;
  bool b_clamped = false;  // b* < 1 was raised to 1 (burn-in phase)
  ProxyForm form = ProxyForm::MainText;
};

/// Fixed momentum, fixed (K, b): eta* = sqrt(c1/(c3~ K)), independent of b.
FixedMomentumOptimum thm1_iteration(const BoundConstants<>& c, double alpha, double b, double k);

/// Fixed momentum, token budget T. With `b` the fixed-batch optimum, without
/// it the joint (eta, b) optimum b* = c2~/(2 sqrt(c1 c3~)) sqrt(T).
FixedMomentumOptimum thm1_token(const BoundConstants<>& c, double alpha, double t,
                                std::optional<double> b = std::nullopt);

/// Token budget at which the unclamped joint b* of thm1_token reaches 1.
double thm1_burn_in_tokens(const BoundConstants<>& c, double alpha);

/// Leading proxy of the fixed-batch analysis, c1/(eta K) + c2 sqrt(alpha/b) + c3' eta/alpha,
/// where c3' = c3 (MainText) or 2L (ExactBound).
double leading_proxy(const BoundConstants<>& c, const HyperParams<>& h, double k,
                     ProxyForm form = ProxyForm::MainText);

struct FixedBatchOptimum {
  double alpha_star;
  double eta_star;
  double risk_star;
  bool alpha_clamped = false;
  double c2_tilde;  // at alpha_star
  double c3_tilde;  // at alpha_star
  // Terms dropped from the leading proxy, evaluated at the optimum.
  double burn_in_term;
  double smoothness_term;
  bool dropped_terms_lower_order;
  ProxyForm form = ProxyForm::MainText;
};

/// Fixed batch, tuned (eta, alpha): alpha* = (2 sqrt(c1 c3)/c2) sqrt(b/K),
/// eta* = sqrt(2) c1^{3/4}/(c2^{1/2} c3^{1/4}) b^{1/4}/K^{3/4}.
FixedBatchOptimum thm2_fixed_batch(const BoundConstants<>& c, double b, const Budget<>& budget,
                                   ProxyForm form = ProxyForm::MainText);

/// eta minimizing the exact token-form bound at fixed (alpha, b).
double exact_eta_star(const BoundConstants<>& c, double alpha, double b, double t);
/// b minimizing the eta-optimized exact bound at fixed alpha (unclamped).
double exact_b_star(const BoundConstants<>& c, double alpha, double t);
/// Exact bound minimized over eta at fixed (alpha, b).
double phi_t(const BoundConstants<>& c, double alpha, double b, double t);
/// Exact bound minimized over (eta, b > 0) at fixed alpha.
double psi_t(const BoundConstants<>& c, double alpha, double t);

/// Coefficients of the optimality cubic for alpha in the jointly tuned problem.
CubicCoefficients<double> alpha_cubic(const BoundConstants<>& c, double t);

struct JointOptimum {
  double alpha_star;
  double b_star;
  double eta_star;
  double k_star;
  double risk_star;
  CubicCoefficients<double> cubic;
  double cubic_residual;  // normalized by a3
  // alpha* ~ u0 T^{-1/3} + u1 T^{-2/3}
  double u0;
  double u1;
  double asymptotic_alpha;
  // leading-order predictions for comparison with the exact values
  double asymptotic_b;
  double asymptotic_eta;
  double asymptotic_k;
  bool alpha_clamped = false;
  bool b_clamped = false;
  ProxyForm form = ProxyForm::ExactBound;
};

/// Joint (eta, alpha, b) optimum of the exact token-form bound.
JointOptimum thm3_joint(const BoundConstants<>& c, double t);

/// (1 + alpha)^{1/4}: tuned fixed-alpha risk relative to the alpha -> 0 limit.
double cor1_gap(double alpha);
/// Tuned fixed-alpha token risk 2 sqrt(2) (c1 c3)^{1/4} c2^{1/2} (1 + alpha)^{1/4} T^{-1/4}.
double cor1_tuned_risk(const BoundConstants<>& c, double alpha, double t);
/// c2 sqrt(alpha)/sqrt(b_max): floor of the fixed-alpha proxy under a batch cap.
double cor1_noise_floor(const BoundConstants<>& c, double alpha, double b_max);

struct BatchPathPlan {
  double rate_exponent;
  PowerLawSchedule schedule;
  bool optimal_rate;  // achieves T^{-1/4}
};

/// Best schedule and rate along the batch path b = T^phi, phi in [0, 1).
BatchPathPlan cor2_batch_path(double phi);

/// risk_t (full token proxy) minimized over eta in closed form at fixed (alpha, b).
double risk_t_tuned_eta(const BoundConstants<>& c, double alpha, double b, double t);

}  // namespace lmoscale
