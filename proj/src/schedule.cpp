// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmoscale/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "lmoscale/errors.hpp"

namespace lmoscale {

void validate(const PowerLawSchedule& s) {
  detail::require(std::isfinite(s.batch_exp) && s.batch_exp >= 0 && s.batch_exp <= 1,
                  "batch exponent must lie in [0, 1]");
  detail::require(std::isfinite(s.alpha_exp) && std::isfinite(s.eta_exp), "schedule exponents must be finite");
}

RateExponents rate_exponents(const PowerLawSchedule& s) {
  validate(s);
  const double phi = s.batch_exp;
  const double gamma = s.alpha_exp;
  const double delta = s.eta_exp;
  RateExponents out;
  out.r = {1.0 - phi - delta, 1.0 - phi / 2.0 - gamma, (phi + gamma) / 2.0, delta, delta - gamma};
  out.overall = *std::min_element(out.r.begin(), out.r.end());
  for (int i = 0; i < 5; ++i) {
    if (out.r[i] <= 0) out.non_decaying.push_back(i);
  }
  return out;
}

AggressiveCeiling aggressive_ceiling(double phi) {
  detail::require(std::isfinite(phi) && phi > 0.5 && phi < 1.0, "aggressive ceiling needs phi in (1/2, 1)");
  const double delta = (1.0 - phi) / 2.0;
  return {delta, delta, 1.0 - phi, 0.5};
}

NoiseModel NoiseModel::heavy_tailed(double p, double sigma_q) {
  NoiseModel n;
  n.heavy_tail_p = p;
  n.q = 1.0 - 1.0 / p;
  n.sigma_q = sigma_q;
  return n;
}

void validate(const NoiseModel& n) {
  detail::require(std::isfinite(n.q) && n.q > 0 && n.q <= 1, "noise exponent q must lie in (0, 1]");
  detail::require(std::isfinite(n.sigma_q) && n.sigma_q > 0, "sigma_q must be positive");
  if (n.heavy_tail_p) {
    const double p = *n.heavy_tail_p;
    detail::require(p > 1 && p <= 2, "heavy-tail moment p must lie in (1, 2]");
    detail::require(std::abs(n.q - (1.0 - 1.0 / p)) < 1e-12, "heavy-tail model requires q = 1 - 1/p");
  }
  if (n.e0) detail::require(std::isfinite(*n.e0) && *n.e0 >= 0, "e0 must be nonnegative");
}

std::string to_string(BatchPreference p) {
  switch (p) {
    case BatchPreference::Flat:
      return "flat";
    case BatchPreference::PushSmallBatch:
      return "push-small-b";
    case BatchPreference::PushLargeBatch:
      return "push-large-b";
  }
  return "unknown";
}

SensitivityReport sensitivity_q(const NoiseModel& n, double b, double t) {
  validate(n);
  detail::require(std::isfinite(b) && b >= 1, "batch must be >= 1");
  detail::require(std::isfinite(t) && t >= b, "token budget must be >= batch");
  const double q = n.q;
  const double k = t / b;

  SensitivityReport r{};
  r.alpha_b_exp = q;
  r.alpha_k_exp = -0.5;
  r.eta_b_exp = q / 2.0;
  r.eta_k_exp = -0.75;
  r.perf_b_exp = 0.25 - q / 2.0;
  r.perf_t_exp = -0.25;
  r.alpha_scale = std::pow(b, q) / std::sqrt(k);
  r.eta_scale = std::pow(b, q / 2.0) / std::pow(k, 0.75);
  r.perf_scale = std::pow(t, -0.25) * std::pow(b, r.perf_b_exp);
  if (r.perf_b_exp == 0.0) {
    r.preference = BatchPreference::Flat;
  } else if (r.perf_b_exp > 0.0) {
    r.preference = BatchPreference::PushSmallBatch;
  } else {
    r.preference = BatchPreference::PushLargeBatch;
  }
  if (n.e0) r.burn_in_coefficient = *n.e0 / k;
  return r;
}

EffectiveEtaReport effective_eta_exponent(const PathExponents& path) {
  detail::require(std::isfinite(path.kappa) && path.kappa >= 0, "kappa must be >= 0");
  detail::require(std::isfinite(path.lambda) && path.lambda >= 0, "lambda must be >= 0");
  detail::require(std::isfinite(path.p) && path.p >= 0 && path.p <= 1, "path exponent p must lie in [0, 1]");
  EffectiveEtaReport r{};
  r.q_eff = path.kappa * path.p - path.lambda * (1.0 - path.p);
  if (path.kappa + path.lambda > 0) r.threshold_p = path.lambda / (path.kappa + path.lambda);
  r.fixed_batch_instantiation = path.kappa == 0.25 && path.lambda == 0.75;
  r.alpha_saturates = r.fixed_batch_instantiation && path.p > 0.5;
  return r;
}

}  // namespace lmoscale
