// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

// Stochastic LMO method with momentum on synthetic objectives:
//   m^{k+1} = (1 - alpha) m^k + alpha g_b(x^k),  x^{k+1} = x^k + eta lmo(m^{k+1}).

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lmoscale/grid.hpp"
#include "lmoscale/lmo.hpp"

namespace lmoscale {

using Matrix = MatrixX<double>;

enum class ObjectiveKind { NoisyQuadratic, MatrixLeastSquares };

std::string to_string(ObjectiveKind k);
ObjectiveKind objective_kind_from_string(const std::string& s);

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::NoisyQuadratic;
  // NoisyQuadratic: f(x) = 1/2 sum_i h_i x_i^2 with h = spectrum.
  std::vector<double> spectrum;
  // MatrixLeastSquares: f(W) = 1/2 ||A (W - W*)||_F^2, A rows x rows, W rows x cols.
  int rows = 0;
  int cols = 0;
  std::uint64_t instance_seed = 0;  // draws A and W*
  double noise_sigma = 0.0;         // per-sample, per-coordinate gradient noise scale
  double delta0 = 1.0;              // f(x0) - f*; fixes the scale of the start point
  // Symmetric alpha-stable noise with this index in (1, 2) instead of Gaussian.
  std::optional<double> stable_index;
};

void validate(const ObjectiveSpec& spec);

/// A materialized objective: known minimizer, start point and smoothness.
class SyntheticObjective {
 public:
  explicit SyntheticObjective(const ObjectiveSpec& spec);

  const ObjectiveSpec& spec() const { return spec_; }
  double value(const Matrix& x) const;
  Matrix gradient(const Matrix& x) const;
  const Matrix& start() const { return x0_; }
  const Matrix& minimizer() const { return x_star_; }
  double smoothness() const { return smoothness_; }
  double delta0() const { return value(x0_); }

  /// Mini-batch gradient noise: mean of `batch` independent per-sample draws.
  Matrix sample_noise(int batch, std::mt19937_64& rng) const;

 private:
  ObjectiveSpec spec_;
  Matrix a_;     // least squares design; empty for the quadratic
  Matrix ata_;
  Matrix x_star_;
  Matrix x0_;
  double smoothness_ = 0.0;
};

enum class MomentumInit { Matched, Zero, Custom };
enum class UpdateRule { Lmo, Sgd };  // Sgd: x <- x - eta m, no normalization

std::string to_string(MomentumInit i);
MomentumInit momentum_init_from_string(const std::string& s);
std::string to_string(UpdateRule u);
UpdateRule update_rule_from_string(const std::string& s);

struct LmoConfig {
  NormKind norm = NormKind::Euclidean;
  double eta = 1e-2;
  double alpha = 1.0;
  int batch = 1;
  int steps = 100;
  std::uint64_t seed = 0;
  MomentumInit init = MomentumInit::Matched;
  Matrix custom_momentum;  // used when init == Custom
  UpdateRule rule = UpdateRule::Lmo;
};

void validate(const LmoConfig& cfg, const SyntheticObjective& obj);

struct SimRun {
  std::vector<double> grad_norms;   // dual norm of the true gradient at x^1..x^K
  std::vector<double> running_min;  // min over 1..k
  Matrix final_x;
  double final_value = 0.0;
  bool aborted = false;      // non-finite iterate; the run stopped early
  int fallback_steps = 0;    // spectral steps that used the exact decomposition
  LmoConfig config;
};

/// Deterministic in (objective, config).
SimRun run(const SyntheticObjective& obj, const LmoConfig& cfg);

/// Independent seed for a (grid point, replicate) pair.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t replicate);

/// Nearest integer >= 1.
int round_batch(double b);

struct SimGrid {
  std::vector<double> eta;
  std::vector<double> alpha;
  std::vector<double> batch;
  std::vector<double> tokens;
  int replicates = 1;
  NormKind norm = NormKind::MaxNorm;
  UpdateRule rule = UpdateRule::Lmo;
  MomentumInit init = MomentumInit::Matched;
  std::uint64_t seed = 0;
};

struct SimPoint {
  double t;
  HyperParams<> params;  // batch already rounded
  int steps;
  double mean_metric;    // mean over replicates of the per-run minimum dual gradient norm
  double std_error;
  int aborted;
};

struct SimSweep {
  std::vector<SimPoint> points;  // ordered by t, then b, eta, alpha as in the grid
  SweepResult best;              // argmin of mean_metric per t, same schema as the grid oracle
};

/// Runs every (t, b, eta, alpha) point of the grid with K = max(1, round(t/b)).
/// Replicates of a point use seeds derive_seed(seed, point, r).
SimSweep sweep_sim(const SyntheticObjective& obj, const SimGrid& grid, unsigned threads = 1);

/// Best point at token budget t, optionally restricted to one batch size.
SimPoint best_point(const SimSweep& sweep, double t, std::optional<double> batch = std::nullopt);

}  // namespace lmoscale
