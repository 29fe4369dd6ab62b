// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmoscale/closed_form.hpp"

#include <cmath>

namespace lmoscale {

namespace {

void require_alpha(double alpha) {
  detail::require(std::isfinite(alpha) && alpha > 0 && alpha <= 1, "alpha must lie in (0, 1]");
}

void require_batch(double b) { detail::require(std::isfinite(b) && b >= 1, "batch must be >= 1"); }

double eta_coefficient_exact(const BoundConstants<>& c, double alpha) {
  return c.smoothness() * (3.5 + 2.0 / alpha);
}

}  // namespace

double c2_tilde(const BoundConstants<>& c, double alpha) { return c.c2() * std::sqrt(alpha); }

double c3_tilde(const BoundConstants<>& c, double alpha) { return c.c3() * (1.0 + 1.0 / alpha); }

FixedMomentumOptimum thm1_iteration(const BoundConstants<>& c, double alpha, double b, double k) {
  require_alpha(alpha);
  require_batch(b);
  detail::require_iterations(k);
  const double c3t = c3_tilde(c, alpha);
  FixedMomentumOptimum out{};
  out.eta_star = std::sqrt(c.c1() / (c3t * k));
  out.b_star = b;
  out.risk_star = 2.0 * std::sqrt(c.c1() * c3t / k) + c2_tilde(c, alpha) / std::sqrt(b);
  out.regime = OptimumRegime::IterationBudget;
  return out;
}

FixedMomentumOptimum thm1_token(const BoundConstants<>& c, double alpha, double t, std::optional<double> b) {
  require_alpha(alpha);
  detail::require(std::isfinite(t) && t >= 1, "token budget must be >= 1");
  const double c1 = c.c1();
  const double c2t = c2_tilde(c, alpha);
  const double c3t = c3_tilde(c, alpha);

  FixedMomentumOptimum out{};
  auto fixed_b = [&](double batch) {
    out.eta_star = std::sqrt(c1 * batch / (c3t * t));
    out.b_star = batch;
    out.risk_star = 2.0 * std::sqrt(c1 * c3t * batch / t) + c2t / std::sqrt(batch);
  };

  if (b) {
    require_batch(*b);
    detail::require_tokens(t, *b);
    fixed_b(*b);
    out.regime = OptimumRegime::TokenBudgetFixedB;
    return out;
  }

  out.regime = OptimumRegime::TokenBudgetJointB;
  const double b_star = c2t / (2.0 * std::sqrt(c1 * c3t)) * std::sqrt(t);
  if (b_star < 1.0 || c2t == 0.0) {
    fixed_b(1.0);
    out.b_clamped = true;
    return out;
  }
  out.b_star = b_star;
  out.eta_star = std::pow(c1, 0.25) * std::sqrt(c2t) / (std::sqrt(2.0) * std::pow(c3t, 0.75)) * std::pow(t, -0.25);
  out.risk_star = 2.0 * std::sqrt(2.0) * std::pow(c1 * c3t, 0.25) * std::sqrt(c2t) * std::pow(t, -0.25);
  return out;
}

double thm1_burn_in_tokens(const BoundConstants<>& c, double alpha) {
  require_alpha(alpha);
  const double ratio = 2.0 * std::sqrt(c.c1() * c3_tilde(c, alpha)) / c2_tilde(c, alpha);
  return ratio * ratio;
}

double leading_proxy(const BoundConstants<>& c, const HyperParams<>& h, double k, ProxyForm form) {
  validate(h);
  detail::require_iterations(k);
  const double c3 = form == ProxyForm::MainText ? c.c3() : 2.0 * c.smoothness();
  return c.c1() / (h.eta * k) + c.c2() * std::sqrt(h.alpha / h.batch) + c3 * h.eta / h.alpha;
}

FixedBatchOptimum thm2_fixed_batch(const BoundConstants<>& c, double b, const Budget<>& budget, ProxyForm form) {
  require_batch(b);
  validate(budget);
  if (budget.kind == BudgetKind::Tokens) detail::require_tokens(budget.value, b);
  const double k = budget.iterations_at(b);
  detail::require_iterations(k);

  const double c1 = c.c1();
  const double c2 = c.c2();
  const double c3 = form == ProxyForm::MainText ? c.c3() : 2.0 * c.smoothness();

  FixedBatchOptimum out{};
  out.form = form;
  const double alpha = 2.0 * std::sqrt(c1 * c3) / c2 * std::sqrt(b / k);
  if (alpha > 1.0 || !std::isfinite(alpha)) {
    out.alpha_star = 1.0;
    out.alpha_clamped = true;
    out.eta_star = std::sqrt(c1 / (c3 * k));
    out.risk_star = leading_proxy(c, {out.eta_star, 1.0, b}, k, form);
  } else {
    out.alpha_star = alpha;
    out.eta_star = std::sqrt(2.0) * std::pow(c1, 0.75) / (std::sqrt(c2) * std::pow(c3, 0.25)) * std::pow(b, 0.25) /
                   std::pow(k, 0.75);
    out.risk_star = 2.0 * std::sqrt(2.0) * std::sqrt(c2) * std::pow(c1 * c3, 0.25) * std::pow(b * k, -0.25);
  }
  out.c2_tilde = c2_tilde(c, out.alpha_star);
  out.c3_tilde = c3_tilde(c, out.alpha_star);
  out.burn_in_term = c2 / (out.alpha_star * std::sqrt(b) * k);
  out.smoothness_term = (form == ProxyForm::MainText ? c.c3() : 3.5 * c.smoothness()) * out.eta_star;
  out.dropped_terms_lower_order = out.burn_in_term < out.risk_star && out.smoothness_term < out.risk_star;
  return out;
}

double exact_eta_star(const BoundConstants<>& c, double alpha, double b, double t) {
  return std::sqrt(b * c.delta0() / (t * eta_coefficient_exact(c, alpha)));
}

double exact_b_star(const BoundConstants<>& c, double alpha, double t) {
  const double rs = c.rho_sigma();
  const double a_t =
      2.0 * std::sqrt(c.delta0() * c.smoothness() / t) * std::sqrt(3.5 + 2.0 / alpha) + 2.0 * rs / (alpha * t);
  const double b_coef = 2.0 * rs * std::sqrt(alpha);
  return b_coef / a_t;
}

double phi_t(const BoundConstants<>& c, double alpha, double b, double t) {
  const double rs = c.rho_sigma();
  return 2.0 * std::sqrt(b * c.delta0() * c.smoothness() / t * (3.5 + 2.0 / alpha)) +
         2.0 * rs * std::sqrt(b) / (alpha * t) + 2.0 * rs * std::sqrt(alpha / b);
}

double psi_t(const BoundConstants<>& c, double alpha, double t) {
  const double rs = c.rho_sigma();
  const double inner = rs * std::sqrt(c.delta0() * c.smoothness() / t) * std::sqrt(3.5 * alpha + 2.0) +
                       rs * rs / (t * std::sqrt(alpha));
  return 4.0 * std::sqrt(inner);
}

CubicCoefficients<double> alpha_cubic(const BoundConstants<>& c, double t) {
  const double rs2 = c.rho_sigma() * c.rho_sigma();
  return {3.5 * 3.5 * c.delta0() * c.smoothness() * t, 3.5 * rs2, 2.0 * rs2};
}

JointOptimum thm3_joint(const BoundConstants<>& c, double t) {
  detail::require(std::isfinite(t) && t >= 1, "token budget must be >= 1");
  detail::require(c.rho_sigma() > 0, "joint tuning needs a positive noise scale");

  JointOptimum out{};
  out.cubic = alpha_cubic(c, t);
  double alpha = positive_root(out.cubic);
  out.cubic_residual = out.cubic.normalized_residual(alpha);
  if (alpha > 1.0) {
    alpha = 1.0;
    out.alpha_clamped = true;
  }
  out.alpha_star = alpha;

  double b = exact_b_star(c, alpha, t);
  if (b < 1.0) {
    b = 1.0;
    out.b_clamped = true;
  }
  out.b_star = b;
  out.eta_star = exact_eta_star(c, alpha, b, t);
  out.k_star = t / b;
  out.risk_star = u_token_exact(c, HyperParams<>{out.eta_star, alpha, b}, t);

  // Condensed cubic A T a^3 - B a - C = 0 with A = (7/2)^2 D0 L, B = (7/2)(rho sigma)^2, C = 2 (rho sigma)^2.
  const double big_a = 3.5 * 3.5 * c.delta0() * c.smoothness();
  const double big_b = out.cubic.a1;
  const double big_c = out.cubic.a0;
  out.u0 = std::cbrt(big_c / big_a);
  out.u1 = big_b / (3.0 * std::pow(big_a, 2.0 / 3.0) * std::cbrt(big_c));
  out.asymptotic_alpha = out.u0 * std::pow(t, -1.0 / 3.0) + out.u1 * std::pow(t, -2.0 / 3.0);

  const double lead_alpha = out.u0 * std::pow(t, -1.0 / 3.0);
  const double dl = c.delta0() * c.smoothness();
  out.asymptotic_b = c.rho_sigma() * lead_alpha * std::sqrt(t) / std::sqrt(2.0 * dl);
  out.asymptotic_eta = std::sqrt(out.asymptotic_b * lead_alpha * c.delta0() / (2.0 * c.smoothness() * t));
  out.asymptotic_k = t / out.asymptotic_b;
  return out;
}

double cor1_gap(double alpha) {
  require_alpha(alpha);
  return std::pow(1.0 + alpha, 0.25);
}

double cor1_tuned_risk(const BoundConstants<>& c, double alpha, double t) {
  require_alpha(alpha);
  detail::require(std::isfinite(t) && t >= 1, "token budget must be >= 1");
  return 2.0 * std::sqrt(2.0) * std::pow(c.c1() * c.c3(), 0.25) * std::sqrt(c.c2()) * std::pow(1.0 + alpha, 0.25) *
         std::pow(t, -0.25);
}

double cor1_noise_floor(const BoundConstants<>& c, double alpha, double b_max) {
  require_alpha(alpha);
  require_batch(b_max);
  return c.c2() * std::sqrt(alpha) / std::sqrt(b_max);
}

BatchPathPlan cor2_batch_path(double phi) {
  detail::require(std::isfinite(phi) && phi >= 0 && phi < 1, "batch exponent phi must lie in [0, 1)");
  BatchPathPlan plan{};
  plan.schedule.batch_exp = phi;
  if (phi <= 0.5) {
    // alpha ~ b(T)/sqrt(T), eta ~ b(T)/T^{3/4}
    plan.schedule.alpha_exp = 0.5 - phi;
    plan.schedule.eta_exp = 0.75 - phi;
    plan.rate_exponent = 0.25;
    plan.optimal_rate = true;
  } else {
    plan.schedule.alpha_exp = 0.0;
    plan.schedule.eta_exp = (1.0 - phi) / 2.0;
    plan.rate_exponent = (1.0 - phi) / 2.0;
    plan.optimal_rate = false;
  }
  return plan;
}

double risk_t_tuned_eta(const BoundConstants<>& c, double alpha, double b, double t) {
  require_alpha(alpha);
  require_batch(b);
  detail::require_tokens(t, b);
  const double c2 = c.c2();
  return 2.0 * std::sqrt(c.c1() * c3_tilde(c, alpha) * b / t) + c2 * std::sqrt(b) / (alpha * t) +
         c2 * std::sqrt(alpha / b);
}

}  // namespace lmoscale
