// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmoscale/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "lmoscale/closed_form.hpp"
#include "lmoscale/minimize.hpp"

namespace lmoscale {

std::string to_string(Objective o) {
  switch (o) {
    case Objective::RiskT:
      return "risk-t";
    case Objective::Simplified:
      return "simplified";
    case Objective::Leading:
      return "leading";
    case Objective::ExactBound:
      return "exact";
  }
  return "unknown";
}

Objective objective_from_string(const std::string& s) {
  if (s == "risk-t") return Objective::RiskT;
  if (s == "simplified") return Objective::Simplified;
  if (s == "leading") return Objective::Leading;
  if (s == "exact") return Objective::ExactBound;
  throw DomainError("unknown objective '" + s + "'");
}

std::string to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::Free:
      return "free";
    case ConstraintKind::FixedAlpha:
      return "fixed-alpha";
    case ConstraintKind::FixedB:
      return "fixed-b";
    case ConstraintKind::FixedEta:
      return "fixed-eta";
    case ConstraintKind::CappedB:
      return "capped-b";
    case ConstraintKind::FixedAlphaAndB:
      return "fixed-alpha-b";
  }
  return "unknown";
}

ConstraintKind constraint_from_string(const std::string& s) {
  if (s == "free") return ConstraintKind::Free;
  if (s == "fixed-alpha") return ConstraintKind::FixedAlpha;
  if (s == "fixed-b") return ConstraintKind::FixedB;
  if (s == "fixed-eta") return ConstraintKind::FixedEta;
  if (s == "capped-b") return ConstraintKind::CappedB;
  if (s == "fixed-alpha-b") return ConstraintKind::FixedAlphaAndB;
  throw DomainError("unknown constraint '" + s + "'");
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::Eta:
      return "eta";
    case Quantity::Alpha:
      return "alpha";
    case Quantity::Batch:
      return "b";
    case Quantity::Risk:
      return "risk";
  }
  return "unknown";
}

double evaluate(Objective o, const BoundConstants<>& c, const HyperParams<>& h, double t) {
  switch (o) {
    case Objective::RiskT:
      return risk_t(c, h, t);
    case Objective::Simplified:
      return risk_simplified(c, h.eta, h.batch, Budget<>::tokens(t), h.alpha);
    case Objective::Leading:
      detail::require_tokens(t, h.batch);
      return leading_proxy(c, h, t / h.batch);
    case Objective::ExactBound:
      return u_token_exact(c, h, t);
  }
  throw DomainError("unknown objective");
}

void validate(const GridSpec& spec) {
  auto axis = [](AxisRange r, const char* what) {
    if (!(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo > 0 && r.lo < r.hi)) {
      throw DomainError(std::string("grid axis ") + what + " needs 0 < lo < hi");
    }
  };
  axis(spec.eta, "eta");
  axis(spec.alpha, "alpha");
  axis(spec.batch, "b");
  axis(spec.tokens, "T");
  detail::require(spec.alpha.hi <= 1.0, "grid alpha range must lie in (0, 1]");
  detail::require(spec.batch.lo >= 1.0, "grid batch range must start at >= 1");
  detail::require(spec.points_per_axis >= 2, "grid needs at least 2 points per axis");
}

std::vector<double> log_uniform(AxisRange r, int n) {
  detail::require(n >= 1, "log_uniform needs n >= 1");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = r.lo;
    return out;
  }
  const double a = std::log(r.lo);
  const double b = std::log(r.hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = r.lo;
  out.back() = r.hi;
  return out;
}

double max_log_step(const GridSpec& spec) {
  const double n = spec.points_per_axis - 1;
  double step = 0.0;
  for (AxisRange r : {spec.eta, spec.alpha, spec.batch}) step = std::max(step, std::log(r.hi / r.lo) / n);
  return step;
}

namespace {

struct Axes {
  std::vector<double> eta;
  std::vector<double> alpha;
  std::vector<double> batch;
  bool eta_free = true;
  bool alpha_free = true;
  bool batch_free = true;
};

Axes make_axes(const GridSpec& spec, Constraint constraint) {
  Axes ax;
  const int n = spec.points_per_axis;
  ax.eta = log_uniform(spec.eta, n);
  ax.alpha = log_uniform(spec.alpha, n);
  ax.batch = log_uniform(spec.batch, n);
  switch (constraint.kind) {
    case ConstraintKind::Free:
      break;
    case ConstraintKind::FixedAlpha:
      detail::require(constraint.value > 0 && constraint.value <= 1, "fixed alpha must lie in (0, 1]");
      ax.alpha = {constraint.value};
      ax.alpha_free = false;
      break;
    case ConstraintKind::FixedB:
      detail::require(constraint.value >= 1 && std::isfinite(constraint.value), "fixed b must be >= 1");
      ax.batch = {constraint.value};
      ax.batch_free = false;
      break;
    case ConstraintKind::FixedEta:
      detail::require(constraint.value > 0 && std::isfinite(constraint.value), "fixed eta must be positive");
      ax.eta = {constraint.value};
      ax.eta_free = false;
      break;
    case ConstraintKind::CappedB: {
      const double cap = constraint.value;
      detail::require(std::isfinite(cap), "batch cap must be finite");
      std::erase_if(ax.batch, [cap](double b) { return b > cap; });
      if (cap >= 1 && (ax.batch.empty() || ax.batch.back() < cap)) ax.batch.push_back(cap);
      if (cap < 1 || ax.batch.empty()) throw InfeasibleError("batch cap leaves no feasible grid point");
      break;
    }
    case ConstraintKind::FixedAlphaAndB:
      detail::require(constraint.alpha > 0 && constraint.alpha <= 1, "fixed alpha must lie in (0, 1]");
      detail::require(constraint.value >= 1 && std::isfinite(constraint.value), "fixed b must be >= 1");
      ax.alpha = {constraint.alpha};
      ax.batch = {constraint.value};
      ax.alpha_free = false;
      ax.batch_free = false;
      break;
  }
  return ax;
}

struct Coefficients {
  double p;   // b/(eta T)
  double q;   // noise terms
  double e0;  // eta
  double e1;  // eta/alpha
  bool burn;  // sqrt(b)/(alpha T)
};

Coefficients coefficients(Objective o, const BoundConstants<>& c) {
  switch (o) {
    case Objective::RiskT:
      return {c.c1(), c.c2(), c.c3(), c.c3(), true};
    case Objective::Simplified:
      return {c.c1(), c.c2(), c.c3(), c.c3(), false};
    case Objective::Leading:
      return {c.c1(), c.c2(), 0.0, c.c3(), false};
    case Objective::ExactBound:
      return {c.delta0(), 2.0 * c.rho_sigma(), 3.5 * c.smoothness(), 2.0 * c.smoothness(), true};
  }
  throw DomainError("unknown objective");
}

SweepRecord argmin_at(const Coefficients& k, const Axes& ax, const std::vector<double>& sqrt_alpha,
                      const std::vector<double>& inv_alpha, double t) {
  SweepRecord rec{t, {0, 0, 0}, std::numeric_limits<double>::infinity(), 0};
  std::size_t bi_best = 0, ei_best = 0, ai_best = 0;
  std::size_t nb_feasible = 0;
  const std::size_t na = ax.alpha.size();
  for (std::size_t bi = 0; bi < ax.batch.size(); ++bi) {
    const double b = ax.batch[bi];
    if (b > t) break;
    nb_feasible = bi + 1;
    const double sb = std::sqrt(b);
    const double p_term = k.p * b / t;
    const double burn = k.burn ? k.q * sb / t : 0.0;
    const double floor_term = k.q / sb;
    for (std::size_t ei = 0; ei < ax.eta.size(); ++ei) {
      const double eta = ax.eta[ei];
      const double det = p_term / eta;
      const double e0 = k.e0 * eta;
      const double e1 = k.e1 * eta;
      for (std::size_t j = 0; j < na; ++j) {
        const std::size_t ai = na - 1 - j;  // largest alpha first
        const double ia = inv_alpha[ai];
        const double r = det + burn * ia + floor_term * sqrt_alpha[ai] + e0 + e1 * ia;
        if (r < rec.best_risk) {
          rec.best_risk = r;
          bi_best = bi;
          ei_best = ei;
          ai_best = ai;
        }
      }
    }
  }
  if (nb_feasible == 0) return rec;
  rec.best = {ax.eta[ei_best], ax.alpha[ai_best], ax.batch[bi_best]};
  if (ax.eta_free && (ei_best == 0 || ei_best + 1 == ax.eta.size())) rec.clamped |= kEtaAtEdge;
  if (ax.alpha_free && (ai_best == 0 || ai_best + 1 == na)) rec.clamped |= kAlphaAtEdge;
  if (ax.batch_free && bi_best == 0) rec.clamped |= kBatchAtLowerEdge;
  if (ax.batch_free && bi_best + 1 == nb_feasible) rec.clamped |= kBatchAtUpperEdge;
  return rec;
}

}  // namespace

SweepResult sweep_at(const BoundConstants<>& c, const GridSpec& spec, Constraint constraint,
                     std::span<const double> tokens, unsigned threads) {
  validate(spec);
  const Axes ax = make_axes(spec, constraint);
  const Coefficients k = coefficients(spec.objective, c);
  std::vector<double> sqrt_alpha(ax.alpha.size()), inv_alpha(ax.alpha.size());
  for (std::size_t i = 0; i < ax.alpha.size(); ++i) {
    sqrt_alpha[i] = std::sqrt(ax.alpha[i]);
    inv_alpha[i] = 1.0 / ax.alpha[i];
  }

  SweepResult result;
  result.constraint = constraint;
  result.objective = spec.objective;
  result.records.resize(tokens.size());

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < tokens.size(); i += stride) {
      result.records[i] = argmin_at(k, ax, sqrt_alpha, inv_alpha, tokens[i]);
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min<std::size_t>(threads, tokens.size()));
  if (n_threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_threads; ++w) pool.emplace_back(work, w, n_threads);
  }

  std::erase_if(result.records, [](const SweepRecord& r) { return !std::isfinite(r.best_risk); });
  if (result.records.empty()) throw InfeasibleError("sweep: no feasible grid point for any T");
  return result;
}

SweepResult sweep(const BoundConstants<>& c, const GridSpec& spec, Constraint constraint, unsigned threads) {
  validate(spec);
  const auto tokens = log_uniform(spec.tokens, spec.points_per_axis);
  return sweep_at(c, spec, constraint, tokens, threads);
}

RefineResult refine(const BoundConstants<>& c, const GridSpec& spec, Constraint constraint, double t,
                    const HyperParams<>& start, double span) {
  validate(spec);
  validate(start);
  const double step = max_log_step(spec);
  const double inf = std::numeric_limits<double>::infinity();

  // log-domain bounds of the feasible region per axis: eta, alpha, b
  std::array<double, 3> dom_lo{-inf, -inf, 0.0};
  std::array<double, 3> dom_hi{inf, 0.0, std::log(t)};
  std::array<double, 3> x{std::log(start.eta), std::log(start.alpha), std::log(start.batch)};
  std::vector<int> free_axes;
  switch (constraint.kind) {
    case ConstraintKind::Free:
      free_axes = {2, 1, 0};
      break;
    case ConstraintKind::FixedAlpha:
      x[1] = std::log(constraint.value);
      free_axes = {2, 0};
      break;
    case ConstraintKind::FixedB:
      x[2] = std::log(constraint.value);
      free_axes = {1, 0};
      break;
    case ConstraintKind::FixedEta:
      x[0] = std::log(constraint.value);
      free_axes = {2, 1};
      break;
    case ConstraintKind::CappedB:
      dom_hi[2] = std::min(dom_hi[2], std::log(constraint.value));
      free_axes = {2, 1, 0};
      break;
    case ConstraintKind::FixedAlphaAndB:
      x[1] = std::log(constraint.alpha);
      x[2] = std::log(constraint.value);
      free_axes = {0};
      break;
  }
  if (x[2] > std::log(t)) throw BudgetTooSmall("refine: batch exceeds token budget");

  // Pinned axes keep their exact values rather than exp(log(v)).
  std::array<double, 3> exact{start.eta, start.alpha, start.batch};
  switch (constraint.kind) {
    case ConstraintKind::FixedAlpha:
      exact[1] = constraint.value;
      break;
    case ConstraintKind::FixedB:
      exact[2] = constraint.value;
      break;
    case ConstraintKind::FixedEta:
      exact[0] = constraint.value;
      break;
    case ConstraintKind::FixedAlphaAndB:
      exact[1] = constraint.alpha;
      exact[2] = constraint.value;
      break;
    default:
      break;
  }
  auto params = [&](const std::array<double, 3>& u) {
    HyperParams<> h{exact[0], exact[1], exact[2]};
    for (int a : free_axes) (a == 0 ? h.eta : a == 1 ? h.alpha : h.batch) = std::exp(u[a]);
    return h;
  };
  auto f = [&](const std::array<double, 3>& u) { return evaluate(spec.objective, c, params(u), t); };

  std::array<double, 3> lo{}, hi{};
  std::function<double(std::size_t)> solve = [&](std::size_t level) -> double {
    if (level == free_axes.size()) return f(x);
    const int a = free_axes[level];
    auto [u, v] = golden_section(
        [&](double u) {
          x[a] = u;
          return solve(level + 1);
        },
        lo[a], hi[a], 64);
    x[a] = u;
    if (level + 1 < free_axes.size()) v = solve(level + 1);
    return v;
  };

  double value = inf;
  for (int round = 0; round < 40; ++round) {
    for (int a : free_axes) {
      lo[a] = std::max(dom_lo[a], x[a] - span * step);
      hi[a] = std::min(dom_hi[a], x[a] + span * step);
    }
    value = solve(0);
    bool on_edge = false;
    for (int a : free_axes) {
      const double tol = 1e-6 * (hi[a] - lo[a]);
      if ((x[a] - lo[a] < tol && lo[a] > dom_lo[a]) || (hi[a] - x[a] < tol && hi[a] < dom_hi[a])) on_edge = true;
    }
    if (!on_edge) break;
  }
  return {params(x), value};
}

FitResult fit_power_law(std::span<const double> xs, std::span<const double> ys, Window window) {
  detail::require(xs.size() == ys.size(), "fit_power_law: xs and ys differ in length");
  const bool bounded = window.t_hi > window.t_lo;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (x < window.t_lo || (bounded && x > window.t_hi)) continue;
    detail::require(x > 0 && ys[i] > 0, "fit_power_law: values must be positive");
    pts.emplace_back(std::log(x), std::log(ys[i]));
  }
  n = static_cast<int>(pts.size());
  if (n < 5) throw InfeasibleError("fit_power_law: need at least 5 points in the window");
  for (auto [lx, ly] : pts) {
    sx += lx;
    sy += ly;
  }
  const double mx = sx / n;
  const double my = sy / n;
  for (auto [lx, ly] : pts) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  detail::require(sxx > 0, "fit_power_law: x values are all equal");
  FitResult fit{};
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.coefficient = std::exp(intercept);
  double ss_res = 0, ss_tot = 0;
  for (auto [lx, ly] : pts) {
    const double e = ly - (intercept + fit.exponent * lx);
    ss_res += e * e;
    ss_tot += (ly - my) * (ly - my);
  }
  fit.r_squared = ss_tot > 0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  fit.window = {std::exp(pts.front().first), std::exp(pts.back().first)};
  fit.n_points = n;
  return fit;
}

std::optional<double> detect_burn_in(const SweepResult& result) {
  const auto& recs = result.records;
  if (recs.empty() || recs.back().best.batch <= 1.0) return std::nullopt;
  std::size_t i = recs.size();
  while (i > 0 && recs[i - 1].best.batch > 1.0) --i;
  return recs[i].t;
}

std::vector<SweepRecord> fit_records(const SweepResult& result, Quantity q) {
  (void)q;
  const bool batch_searched =
      result.constraint.kind != ConstraintKind::FixedB &&
      result.constraint.kind != ConstraintKind::FixedAlphaAndB && !result.records.empty();
  double threshold = 0.0;
  if (batch_searched) {
    auto th = detect_burn_in(result);
    if (!th) return {};
    threshold = *th;
  }
  std::vector<SweepRecord> out;
  for (const auto& r : result.records) {
    if (r.t < threshold || r.clamped != 0) continue;
    out.push_back(r);
  }
  return out;
}

FitResult fit_sweep(const SweepResult& result, Quantity q, Window window) {
  const auto recs = fit_records(result, q);
  std::vector<double> xs, ys;
  for (const auto& r : recs) {
    xs.push_back(r.t);
    switch (q) {
      case Quantity::Eta:
        ys.push_back(r.best.eta);
        break;
      case Quantity::Alpha:
        ys.push_back(r.best.alpha);
        break;
      case Quantity::Batch:
        ys.push_back(r.best.batch);
        break;
      case Quantity::Risk:
        ys.push_back(r.best_risk);
        break;
    }
  }
  return fit_power_law(xs, ys, window);
}

}  // namespace lmoscale
