// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force verification: log-uniform grids over (eta, alpha, b, T),
// constrained argmin per token budget, local refinement and power-law fits.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lmoscale/proxy.hpp"

namespace lmoscale {

struct AxisRange {
  double lo;
  double hi;
};

/// Objective evaluated by a sweep.
enum class Objective {
  RiskT,       // full token proxy
  Simplified,  // fixed-momentum large-horizon proxy (burn-in dropped)
  Leading,     // fixed-batch leading proxy c1 b/(eta T) + c2 sqrt(alpha/b) + c3 eta/alpha
  ExactBound,  // token-form bound with its exact coefficients
};

std::string to_string(Objective o);
Objective objective_from_string(const std::string& s);

/// Evaluates `o` at a single point; requires t >= h.batch.
double evaluate(Objective o, const BoundConstants<>& c, const HyperParams<>& h, double t);

struct GridSpec {
  AxisRange eta{1e-15, 1e4};
  AxisRange alpha{1e-10, 1.0};
  AxisRange batch{1.0, 1e15};
  AxisRange tokens{1e2, 1e22};
  int points_per_axis = 100;
  Objective objective = Objective::RiskT;
};

void validate(const GridSpec& spec);

/// n log-uniform values from lo to hi, endpoints included.
std::vector<double> log_uniform(AxisRange r, int n);

/// Largest log-spacing over the axes of a GridSpec.
double max_log_step(const GridSpec& spec);

enum class ConstraintKind { Free, FixedAlpha, FixedB, FixedEta, CappedB, FixedAlphaAndB };

struct Constraint {
  ConstraintKind kind = ConstraintKind::Free;
  double value = 0.0;
  double alpha = 0.0;  // FixedAlphaAndB only; value holds b

  static Constraint free() { return {ConstraintKind::Free, 0.0}; }
  static Constraint fixed_alpha(double a) { return {ConstraintKind::FixedAlpha, a}; }
  static Constraint fixed_b(double b) { return {ConstraintKind::FixedB, b}; }
  static Constraint fixed_eta(double e) { return {ConstraintKind::FixedEta, e}; }
  static Constraint capped_b(double b_max) { return {ConstraintKind::CappedB, b_max}; }
  static Constraint fixed_alpha_and_b(double a, double b) { return {ConstraintKind::FixedAlphaAndB, b, a}; }
};

std::string to_string(ConstraintKind k);
ConstraintKind constraint_from_string(const std::string& s);

// Bits of SweepRecord::clamped: the argmin sits on the edge of a searched axis.
inline constexpr std::uint32_t kEtaAtEdge = 1u;
inline constexpr std::uint32_t kAlphaAtEdge = 2u;
inline constexpr std::uint32_t kBatchAtLowerEdge = 4u;
inline constexpr std::uint32_t kBatchAtUpperEdge = 8u;

struct SweepRecord {
  double t;
  HyperParams<> best;
  double best_risk;
  std::uint32_t clamped = 0;
};

struct SweepResult {
  Constraint constraint;
  Objective objective = Objective::RiskT;
  std::vector<SweepRecord> records;
};

/// Argmin of spec.objective over the constrained grid, one record per
/// grid T. Ties go to the smallest b, then the smallest eta, then the largest
/// alpha. Points with b > T are infeasible and skipped.
SweepResult sweep(const BoundConstants<>& c, const GridSpec& spec, Constraint constraint, unsigned threads = 1);

/// Same as sweep but for an explicit list of token budgets.
SweepResult sweep_at(const BoundConstants<>& c, const GridSpec& spec, Constraint constraint,
                     std::span<const double> tokens, unsigned threads = 1);

struct RefineResult {
  HyperParams<> params;
  double risk;
};

/// Local refinement of a grid argmin by nested golden-section search in log
/// coordinates over the free axes. `span` is the half-width of the search box
/// in grid steps; the box is recentred when the optimum lands on its edge.
RefineResult refine(const BoundConstants<>& c, const GridSpec& spec, Constraint constraint, double t,
                    const HyperParams<>& start, double span = 3.0);

struct Window {
  double t_lo = 0.0;
  double t_hi = 0.0;  // t_hi <= t_lo means unbounded above
};

struct FitResult {
  double exponent;
  double coefficient;
  double r_squared;
  Window window;
  int n_points;
};

/// Least-squares line through (ln x, ln y) for the points with x in the window.
FitResult fit_power_law(std::span<const double> xs, std::span<const double> ys, Window window = {});

/// Smallest grid T beyond which the best b exceeds 1 for every larger T;
/// empty when that never happens.
std::optional<double> detect_burn_in(const SweepResult& result);

enum class Quantity { Eta, Alpha, Batch, Risk };

std::string to_string(Quantity q);

/// Records usable for fitting `q`: past the burn-in threshold and not clamped
/// on any axis that matters for `q`.
std::vector<SweepRecord> fit_records(const SweepResult& result, Quantity q);

/// Power-law fit of `q` against T over fit_records(result, q), further limited to `window`.
FitResult fit_sweep(const SweepResult& result, Quantity q, Window window = {});

}  // namespace lmoscale
