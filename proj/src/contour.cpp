// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmoscale/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lmoscale {

ContourConstants ContourConstants::from(const BoundConstants<>& c, double alpha) {
  detail::require(std::isfinite(alpha) && alpha > 0 && alpha <= 1, "alpha must lie in (0, 1]");
  ContourConstants cc{};
  cc.alpha = alpha;
  cc.delta0 = c.delta0();
  cc.eta_coefficient = c.smoothness() * (3.5 + 2.0 / alpha);
  cc.c_det = 2.0 * std::sqrt(cc.delta0 * cc.eta_coefficient);
  cc.c_burn = 2.0 * c.rho_sigma() / alpha;
  cc.c_floor = 2.0 * c.rho_sigma() * std::sqrt(alpha);
  return cc;
}

namespace {

void require_bk(double b, double k) {
  detail::require(std::isfinite(b) && b >= 1, "batch must be >= 1");
  detail::require_iterations(k);
}

double noise_terms(const ContourConstants& cc, double b, double k) {
  const double sb = std::sqrt(b);
  return cc.c_burn / (k * sb) + cc.c_floor / sb;
}

}  // namespace

double u_eta(const ContourConstants& cc, double b, double k) {
  require_bk(b, k);
  return cc.c_det / std::sqrt(k) + noise_terms(cc, b, k);
}

double u_eta_floored(const ContourConstants& cc, double b, double k, double eta_floor) {
  require_bk(b, k);
  detail::require(std::isfinite(eta_floor) && eta_floor >= 0, "eta floor must be nonnegative");
  const double eta = std::max(eta_floor, std::sqrt(cc.delta0 / (k * cc.eta_coefficient)));
  return cc.delta0 / (eta * k) + cc.eta_coefficient * eta + noise_terms(cc, b, k);
}

double u_eta_on_grid(const ContourConstants& cc, double b, double k, std::span<const double> etas) {
  require_bk(b, k);
  detail::require(!etas.empty(), "step-size grid must not be empty");
  double best = std::numeric_limits<double>::infinity();
  for (double eta : etas) best = std::min(best, cc.delta0 / (eta * k) + cc.eta_coefficient * eta);
  return best + noise_terms(cc, b, k);
}

std::string to_string(ContourRegime r) {
  switch (r) {
    case ContourRegime::IterationLimited:
      return "iteration-limited";
    case ContourRegime::Intermediate:
      return "intermediate";
    case ContourRegime::BatchLimited:
      return "batch-limited";
  }
  return "unknown";
}

LevelSet level_set(const ContourConstants& cc, double target, std::span<const double> k_grid,
                   std::optional<double> k0) {
  if (!(std::isfinite(target) && target > 0)) throw InfeasibleError("contour level must be positive");
  detail::require(!k_grid.empty(), "K grid must not be empty");
  LevelSet ls{};
  ls.target = target;
  ls.k_min = (cc.c_det / target) * (cc.c_det / target);
  ls.b_min = (cc.c_floor / target) * (cc.c_floor / target);
  double log_sum = 0.0;
  for (double k : k_grid) {
    detail::require_iterations(k);
    log_sum += std::log(k);
  }
  ls.k0 = k0 ? *k0 : std::exp(log_sum / static_cast<double>(k_grid.size()));

  for (double k : k_grid) {
    if (k <= ls.k_min) continue;
    if (u_eta(cc, 1.0, k) <= target) continue;  // level lies below b = 1
    // u is strictly decreasing in b towards c_det/sqrt(K) < target.
    double lo = 0.0;
    double hi = 1.0;
    while (u_eta(cc, std::exp(hi), k) > target) {
      hi *= 2.0;
      if (hi > 700.0) throw NumericalError("level_set: failed to bracket the contour");
    }
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (u_eta(cc, std::exp(mid), k) > target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double b = std::exp(0.5 * (lo + hi));
    ContourSample s{};
    s.k = k;
    s.b = b;
    s.u = u_eta(cc, b, k);
    s.frac_det = cc.c_det / std::sqrt(k) / s.u;
    s.frac_burn = cc.c_burn / (k * std::sqrt(b)) / s.u;
    s.frac_floor = cc.c_floor / std::sqrt(b) / s.u;
    if (s.frac_det >= s.frac_burn && s.frac_det >= s.frac_floor) {
      s.regime = ContourRegime::IterationLimited;
    } else if (s.frac_burn >= s.frac_floor) {
      s.regime = ContourRegime::Intermediate;
    } else {
      s.regime = ContourRegime::BatchLimited;
    }
    ls.samples.push_back(s);
  }
  if (ls.samples.empty()) throw InfeasibleError("contour level not attained on the K grid with b >= 1");
  return ls;
}

std::vector<double> hyperbola_residuals(const ContourConstants& cc, const LevelSet& ls) {
  const double c = ls.target;
  const double rhs = cc.c_det * (cc.c_floor + cc.c_burn / ls.k0);
  std::vector<double> out;
  out.reserve(ls.samples.size());
  for (const auto& s : ls.samples) {
    const double f = cc.c_floor + cc.c_burn / s.k;
    const double lhs = (c * std::sqrt(s.k) - cc.c_det) * (c * std::sqrt(s.b) - f);
    out.push_back(std::abs(lhs - rhs) / rhs);
  }
  return out;
}

}  // namespace lmoscale
