// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

// Classical Euclidean SGD bound D0/(eta K) + L eta sigma^2/b as a baseline.

#pragma once

#include <span>
#include <vector>

#include "lmoscale/proxy.hpp"

namespace lmoscale {

struct SgdRisk {
  double value;
  bool eta_above_stability;  // eta > 1/L, outside the bound's step-size condition
};

/// Uses delta0, smoothness and noise_scale of `c`; the norm constant plays no role.
SgdRisk sgd_risk(const BoundConstants<>& c, double eta, double b, const Budget<>& budget);

struct SgdTuned {
  double eta_star;       // after the eta <= 1/L cap
  double value;          // bound at eta_star
  double rate;           // sqrt(D0 L sigma^2/(b K)), half the uncapped optimum
  double eta_uncapped;
  bool capped = false;
};

/// Bound minimized over eta at fixed batch. Uncapped, eta* = sqrt(D0 b/(L sigma^2 K)) and
/// the value 2 sqrt(D0 L sigma^2/(b K)) depends on (b, K) only through T = bK.
SgdTuned sgd_tuned(const BoundConstants<>& c, double b, const Budget<>& budget);

struct BatchComparison {
  std::vector<double> batches;
  std::vector<SgdTuned> sgd;
  std::vector<double> lmo;       // LMO token proxy at fixed alpha, minimized over eta
  double sgd_relative_spread;    // (max - min)/min of the uncapped SGD values
  std::size_t lmo_argmin;
  bool lmo_interior;             // argmin strictly inside the batch list
};

/// SGD and fixed-alpha LMO tuned values over a list of batch sizes at one token budget.
BatchComparison compare_batches(const BoundConstants<>& c, double alpha, double t, std::span<const double> batches);

}  // namespace lmoscale
