// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmoscale/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace lmoscale {

std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::Euclidean:
      return "euclidean";
    case NormKind::MaxNorm:
      return "max";
    case NormKind::Spectral:
      return "spectral";
  }
  return "unknown";
}

NormKind norm_kind_from_string(const std::string& s) {
  if (s == "euclidean") return NormKind::Euclidean;
  if (s == "max") return NormKind::MaxNorm;
  if (s == "spectral") return NormKind::Spectral;
  throw DomainError("unknown norm '" + s + "' (expected euclidean, max or spectral)");
}

std::string to_string(ObjectiveKind k) {
  return k == ObjectiveKind::NoisyQuadratic ? "quadratic" : "least-squares";
}

ObjectiveKind objective_kind_from_string(const std::string& s) {
  if (s == "quadratic") return ObjectiveKind::NoisyQuadratic;
  if (s == "least-squares") return ObjectiveKind::MatrixLeastSquares;
  throw DomainError("unknown objective kind '" + s + "'");
}

std::string to_string(MomentumInit i) {
  switch (i) {
    case MomentumInit::Matched:
      return "matched";
    case MomentumInit::Zero:
      return "zero";
    case MomentumInit::Custom:
      return "custom";
  }
  return "unknown";
}

MomentumInit momentum_init_from_string(const std::string& s) {
  if (s == "matched") return MomentumInit::Matched;
  if (s == "zero") return MomentumInit::Zero;
  if (s == "custom") return MomentumInit::Custom;
  throw DomainError("unknown momentum init '" + s + "'");
}

std::string to_string(UpdateRule u) { return u == UpdateRule::Lmo ? "lmo" : "sgd"; }

UpdateRule update_rule_from_string(const std::string& s) {
  if (s == "lmo") return UpdateRule::Lmo;
  if (s == "sgd") return UpdateRule::Sgd;
  throw DomainError("unknown update rule '" + s + "'");
}

void validate(const ObjectiveSpec& spec) {
  if (spec.kind == ObjectiveKind::NoisyQuadratic) {
    detail::require(!spec.spectrum.empty(), "quadratic objective needs a nonempty spectrum");
    for (double h : spec.spectrum) detail::require(std::isfinite(h) && h > 0, "spectrum entries must be positive");
  } else {
    detail::require(spec.rows >= 1 && spec.cols >= 1, "least-squares objective needs positive dimensions");
  }
  detail::require(std::isfinite(spec.noise_sigma) && spec.noise_sigma >= 0, "noise_sigma must be nonnegative");
  detail::require(std::isfinite(spec.delta0) && spec.delta0 > 0, "delta0 must be positive");
  if (spec.stable_index) {
    detail::require(*spec.stable_index > 1 && *spec.stable_index < 2, "stable index must lie in (1, 2)");
  }
}

SyntheticObjective::SyntheticObjective(const ObjectiveSpec& spec) : spec_(spec) {
  validate(spec_);
  Matrix direction;
  if (spec_.kind == ObjectiveKind::NoisyQuadratic) {
    const auto n = static_cast<Eigen::Index>(spec_.spectrum.size());
    x_star_ = Matrix::Zero(n, 1);
    direction = Matrix::Ones(n, 1);
    smoothness_ = *std::max_element(spec_.spectrum.begin(), spec_.spectrum.end());
  } else {
    std::mt19937_64 rng(spec_.instance_seed);
    std::normal_distribution<double> normal;
    const int r = spec_.rows;
    a_ = Matrix::Identity(r, r) + Matrix(r, r).unaryExpr([&](double) { return normal(rng); }) / (2.0 * std::sqrt(r));
    ata_ = a_.transpose() * a_;
    x_star_ = Matrix(r, spec_.cols).unaryExpr([&](double) { return normal(rng); });
    direction = Matrix(r, spec_.cols).unaryExpr([&](double) { return normal(rng); });
    smoothness_ = Eigen::JacobiSVD<Matrix>(a_).singularValues()(0);
    smoothness_ *= smoothness_;
  }
  // f is quadratic in the offset, so scaling the direction fixes f(x0) exactly.
  const double f1 = value(x_star_ + direction);
  x0_ = x_star_ + direction * std::sqrt(spec_.delta0 / f1);
}

double SyntheticObjective::value(const Matrix& x) const {
  if (spec_.kind == ObjectiveKind::NoisyQuadratic) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) s += spec_.spectrum[i] * x(i, 0) * x(i, 0);
    return 0.5 * s;
  }
  return 0.5 * (a_ * (x - x_star_)).squaredNorm();
}

Matrix SyntheticObjective::gradient(const Matrix& x) const {
  if (spec_.kind == ObjectiveKind::NoisyQuadratic) {
    Matrix g(x.rows(), 1);
    for (Eigen::Index i = 0; i < x.rows(); ++i) g(i, 0) = spec_.spectrum[i] * x(i, 0);
    return g;
  }
  return ata_ * (x - x_star_);
}

Matrix SyntheticObjective::sample_noise(int batch, std::mt19937_64& rng) const {
  const Eigen::Index rows = x0_.rows();
  const Eigen::Index cols = x0_.cols();
  if (spec_.noise_sigma == 0.0) return Matrix::Zero(rows, cols);
  if (!spec_.stable_index) {
    std::normal_distribution<double> normal(0.0, spec_.noise_sigma / std::sqrt(static_cast<double>(batch)));
    return Matrix(rows, cols).unaryExpr([&](double) { return normal(rng); });
  }
  // Chambers-Mallows-Stuck; the mean of b symmetric stable draws is b^{1/a - 1} times one draw.
  const double a = *spec_.stable_index;
  const double scale = spec_.noise_sigma * std::pow(static_cast<double>(batch), 1.0 / a - 1.0);
  std::uniform_real_distribution<double> uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
  std::exponential_distribution<double> expo(1.0);
  return Matrix(rows, cols).unaryExpr([&](double) {
    const double v = uniform(rng);
    const double w = expo(rng);
    const double s = std::sin(a * v) / std::pow(std::cos(v), 1.0 / a) *
                     std::pow(std::cos((1.0 - a) * v) / w, (1.0 - a) / a);
    return scale * s;
  });
}

void validate(const LmoConfig& cfg, const SyntheticObjective& obj) {
  detail::require(std::isfinite(cfg.eta) && cfg.eta > 0, "eta must be positive");
  detail::require(std::isfinite(cfg.alpha) && cfg.alpha > 0 && cfg.alpha <= 1, "alpha must lie in (0, 1]");
  detail::require(cfg.batch >= 1, "batch must be >= 1");
  detail::require(cfg.steps >= 1, "steps must be >= 1");
  if (cfg.init == MomentumInit::Custom) {
    detail::require(cfg.custom_momentum.rows() == obj.start().rows() && cfg.custom_momentum.cols() == obj.start().cols(),
                    "custom momentum has the wrong shape");
  }
}

SimRun run(const SyntheticObjective& obj, const LmoConfig& cfg) {
  validate(cfg, obj);
  std::mt19937_64 rng(cfg.seed);
  SimRun out;
  out.config = cfg;
  out.grad_norms.reserve(cfg.steps);
  out.running_min.reserve(cfg.steps);

  Matrix x = obj.start();
  Matrix m;
  switch (cfg.init) {
    case MomentumInit::Matched:
      m = obj.gradient(x) + obj.sample_noise(cfg.batch, rng);
      break;
    case MomentumInit::Zero:
      m = Matrix::Zero(x.rows(), x.cols());
      break;
    case MomentumInit::Custom:
      m = cfg.custom_momentum;
      break;
  }

  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg.steps; ++k) {
    const Matrix g = obj.gradient(x) + obj.sample_noise(cfg.batch, rng);
    momentum_update(m, g, cfg.alpha);
    if (cfg.rule == UpdateRule::Lmo) {
      auto dir = lmo_direction(m, cfg.norm);
      if (dir.used_fallback) ++out.fallback_steps;
      x += cfg.eta * dir.d;
    } else {
      x -= cfg.eta * m;
    }
    if (!x.allFinite() || !m.allFinite()) {
      out.aborted = true;
      break;
    }
    const double gn = dual_norm(obj.gradient(x), cfg.norm);
    if (!std::isfinite(gn)) {
      out.aborted = true;
      break;
    }
    best = std::min(best, gn);
    out.grad_norms.push_back(gn);
    out.running_min.push_back(best);
  }
  out.final_x = x;
  out.final_value = out.aborted ? std::numeric_limits<double>::quiet_NaN() : obj.value(x);
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t replicate) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ point) ^ replicate);
}

int round_batch(double b) {
  detail::require(std::isfinite(b) && b < 2e9, "batch must be finite");
  return std::max(1, static_cast<int>(std::llround(b)));
}

SimSweep sweep_sim(const SyntheticObjective& obj, const SimGrid& grid, unsigned threads) {
  detail::require(!grid.eta.empty() && !grid.alpha.empty() && !grid.batch.empty() && !grid.tokens.empty(),
                  "simulation grids must be nonempty");
  detail::require(grid.replicates >= 1, "replicates must be >= 1");

  SimSweep out;
  for (double t : grid.tokens) {
    detail::require(std::isfinite(t) && t >= 1, "token budgets must be >= 1");
    for (double b : grid.batch) {
      const int bi = round_batch(b);
      const int steps = std::max(1, static_cast<int>(std::llround(t / bi)));
      for (double eta : grid.eta) {
        for (double alpha : grid.alpha) {
          out.points.push_back({t, {eta, alpha, static_cast<double>(bi)}, steps, 0.0, 0.0, 0});
        }
      }
    }
  }

  const std::size_t reps = static_cast<std::size_t>(grid.replicates);
  const std::size_t n_tasks = out.points.size() * reps;
  std::vector<double> metric(n_tasks);
  std::vector<char> aborted(n_tasks);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t task = next++; task < n_tasks; task = next++) {
      const std::size_t p = task / reps;
      const std::size_t r = task % reps;
      const SimPoint& pt = out.points[p];
      LmoConfig cfg;
      cfg.norm = grid.norm;
      cfg.rule = grid.rule;
      cfg.init = grid.init;
      cfg.eta = pt.params.eta;
      cfg.alpha = pt.params.alpha;
      cfg.batch = static_cast<int>(pt.params.batch);
      cfg.steps = pt.steps;
      cfg.seed = derive_seed(grid.seed, p, r);
      const SimRun res = run(obj, cfg);
      metric[task] = res.running_min.empty() ? dual_norm(obj.gradient(obj.start()), grid.norm) : res.running_min.back();
      aborted[task] = res.aborted;
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_tasks)));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n_threads; ++w) pool.emplace_back(work);
  }

  for (std::size_t p = 0; p < out.points.size(); ++p) {
    double sum = 0.0;
    int n_aborted = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      sum += metric[p * reps + r];
      n_aborted += aborted[p * reps + r];
    }
    const double mean = sum / static_cast<double>(reps);
    double ss = 0.0;
    for (std::size_t r = 0; r < reps; ++r) ss += (metric[p * reps + r] - mean) * (metric[p * reps + r] - mean);
    SimPoint& pt = out.points[p];
    pt.mean_metric = mean;
    pt.std_error = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps)) : 0.0;
    pt.aborted = n_aborted;
  }

  out.best.constraint = Constraint::free();
  if (grid.alpha.size() == 1) out.best.constraint = Constraint::fixed_alpha(grid.alpha.front());
  if (grid.batch.size() == 1) out.best.constraint = Constraint::fixed_b(round_batch(grid.batch.front()));
  for (double t : grid.tokens) {
    const SimPoint best = best_point(out, t);
    SweepRecord rec{t, best.params, best.mean_metric, 0};
    auto edge = [](const std::vector<double>& axis, double v) {
      return axis.size() > 1 && (v == *std::min_element(axis.begin(), axis.end()) ||
                                 v == *std::max_element(axis.begin(), axis.end()));
    };
    if (edge(grid.eta, best.params.eta)) rec.clamped |= kEtaAtEdge;
    if (edge(grid.alpha, best.params.alpha)) rec.clamped |= kAlphaAtEdge;
    if (grid.batch.size() > 1) {
      std::vector<double> rounded;
      for (double b : grid.batch) rounded.push_back(round_batch(b));
      if (best.params.batch == *std::min_element(rounded.begin(), rounded.end())) rec.clamped |= kBatchAtLowerEdge;
      if (best.params.batch == *std::max_element(rounded.begin(), rounded.end())) rec.clamped |= kBatchAtUpperEdge;
    }
    out.best.records.push_back(rec);
  }
  return out;
}

SimPoint best_point(const SimSweep& sweep, double t, std::optional<double> batch) {
  const SimPoint* best = nullptr;
  for (const auto& p : sweep.points) {
    if (p.t != t) continue;
    if (batch && p.params.batch != static_cast<double>(round_batch(*batch))) continue;
    if (!best || p.mean_metric < best->mean_metric) best = &p;
  }
  if (!best) throw InfeasibleError("no simulated point matches the request");
  return *best;
}

}  // namespace lmoscale
