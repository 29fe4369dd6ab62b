// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmoscale/sgd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lmoscale/closed_form.hpp"

namespace lmoscale {

namespace {

double iterations_of(const Budget<>& budget, double b) {
  validate(budget);
  detail::require(std::isfinite(b) && b >= 1, "batch must be >= 1");
  if (budget.kind == BudgetKind::Tokens) detail::require_tokens(budget.value, b);
  const double k = budget.iterations_at(b);
  detail::require_iterations(k);
  return k;
}

double bound(const BoundConstants<>& c, double eta, double b, double k) {
  const double s2 = c.noise_scale() * c.noise_scale();
  return c.delta0() / (eta * k) + c.smoothness() * eta * s2 / b;
}

}  // namespace

SgdRisk sgd_risk(const BoundConstants<>& c, double eta, double b, const Budget<>& budget) {
  detail::require(std::isfinite(eta) && eta > 0, "eta must be positive and finite");
  const double k = iterations_of(budget, b);
  return {bound(c, eta, b, k), eta > 1.0 / c.smoothness()};
}

SgdTuned sgd_tuned(const BoundConstants<>& c, double b, const Budget<>& budget) {
  const double k = iterations_of(budget, b);
  const double s2 = c.noise_scale() * c.noise_scale();
  const double l = c.smoothness();
  SgdTuned out{};
  out.eta_uncapped = s2 > 0 ? std::sqrt(c.delta0() * b / (l * s2 * k)) : std::numeric_limits<double>::infinity();
  out.rate = std::sqrt(c.delta0() * l * s2 / (b * k));
  if (out.eta_uncapped > 1.0 / l) {
    out.eta_star = 1.0 / l;
    out.capped = true;
    out.value = bound(c, out.eta_star, b, k);
  } else {
    out.eta_star = out.eta_uncapped;
    out.value = 2.0 * out.rate;
  }
  return out;
}

BatchComparison compare_batches(const BoundConstants<>& c, double alpha, double t, std::span<const double> batches) {
  detail::require(!batches.empty(), "batch list must not be empty");
  BatchComparison out{};
  out.batches.assign(batches.begin(), batches.end());
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < batches.size(); ++i) {
    const double b = batches[i];
    const SgdTuned s = sgd_tuned(c, b, Budget<>::tokens(t));
    out.sgd.push_back(s);
    const double v = 2.0 * s.rate;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    const double l = risk_t_tuned_eta(c, alpha, b, t);
    out.lmo.push_back(l);
    if (l < best) {
      best = l;
      out.lmo_argmin = i;
    }
  }
  out.sgd_relative_spread = (hi - lo) / lo;
  out.lmo_interior = out.lmo_argmin > 0 && out.lmo_argmin + 1 < batches.size();
  return out;
}

}  // namespace lmoscale
