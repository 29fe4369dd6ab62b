// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmoscale/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lmoscale/closed_form.hpp"
#include "lmoscale/contour.hpp"
#include "lmoscale/grid.hpp"
#include "lmoscale/io.hpp"
#include "lmoscale/schedule.hpp"
#include "lmoscale/sgd.hpp"
#include "lmoscale/sim.hpp"
#include "lmoscale/transfer.hpp"

namespace lmoscale {

namespace {

struct Common {
  std::string config;
  std::string out;
  std::string format;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct ConstantOptions {
  double c1 = 1.0, c2 = 1.0, c3 = 1.0;
  double delta0 = 1.0, smoothness = 1.0, sigma = 1.0, rho = 1.0;
  std::vector<CLI::Option*> proxy;
  std::vector<CLI::Option*> physical;

  void add(CLI::App* app) {
    proxy.push_back(app->add_option("--c1", c1, "proxy constant c1 = D0"));
    proxy.push_back(app->add_option("--c2", c2, "proxy constant c2 = 2 rho sigma"));
    proxy.push_back(app->add_option("--c3", c3, "proxy constant c3 = 4 L"));
    physical.push_back(app->add_option("--delta0", delta0, "initial suboptimality"));
    physical.push_back(app->add_option("--smoothness", smoothness, "smoothness L"));
    physical.push_back(app->add_option("--sigma", sigma, "gradient noise scale"));
    physical.push_back(app->add_option("--rho", rho, "norm-equivalence constant"));
  }

  // Physical constants win when any is given; otherwise (c1, c2, c3), unless
  // the command reads physical constants by default.
  BoundConstants<> make(bool physical_default = false) const {
    bool any_physical = false;
    bool any_proxy = false;
    for (auto* o : physical) any_physical |= o->count() > 0;
    for (auto* o : proxy) any_proxy |= o->count() > 0;
    if (any_physical && any_proxy) throw DomainError("give either --c1/--c2/--c3 or physical constants, not both");
    if (any_physical || (physical_default && !any_proxy)) return BoundConstants<>(delta0, smoothness, sigma, rho);
    return BoundConstants<>::from_proxy(c1, c2, c3);
  }
};

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(parse_number(item));
    } catch (const DomainError&) {
      throw DomainError(std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  if (out.empty()) throw DomainError(std::string(what) + " must list at least one value");
  return out;
}

std::string json_scalar_arg(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  throw DomainError("config entry '" + key + "' must be a string, number or list of numbers");
}

// Config entries become command-line arguments placed right after the
// subcommand, so explicit flags (which come later) take precedence.
std::vector<std::string> config_args(const std::string& path, std::string& command) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw DomainError("config file must hold a JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      if (!value.is_string()) throw DomainError("config entry 'command' must be a string");
      if (command.empty()) command = value.get<std::string>();
      continue;
    }
    if (key == "config") throw DomainError("config files cannot include other config files");
    args.push_back("--" + key);
    if (value.is_array()) {
      std::string joined;
      for (const auto& e : value) joined += (joined.empty() ? "" : ",") + json_scalar_arg(e, key);
      args.push_back(joined);
    } else {
      args.push_back(json_scalar_arg(value, key));
    }
  }
  return args;
}

const std::vector<std::string> kCommands = {"plan",    "verify",   "transfer",   "contour",
                                            "analyze", "simulate", "compare-sgd"};

bool is_command(const std::string& s) { return std::find(kCommands.begin(), kCommands.end(), s) != kCommands.end(); }

std::vector<std::string> assemble_args(int argc, const char* const* argv) {
  std::vector<std::string> raw(argv + 1, argv + argc);
  std::string config;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == "--config" && i + 1 < raw.size()) config = raw[i + 1];
    if (raw[i].rfind("--config=", 0) == 0) config = raw[i].substr(9);
  }
  std::string command;
  std::size_t command_pos = raw.size();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (is_command(raw[i])) {
      command = raw[i];
      command_pos = i;
      break;
    }
  }
  std::vector<std::string> extra;
  if (!config.empty()) extra = config_args(config, command);

  std::vector<std::string> args;
  if (command_pos < raw.size()) {
    args.assign(raw.begin(), raw.begin() + command_pos + 1);
    args.insert(args.end(), extra.begin(), extra.end());
    args.insert(args.end(), raw.begin() + command_pos + 1, raw.end());
  } else if (!command.empty()) {
    args.push_back(command);
    args.insert(args.end(), extra.begin(), extra.end());
    args.insert(args.end(), raw.begin(), raw.end());
  } else {
    args = raw;
  }
  return args;
}

double flag(bool b) { return b ? 1.0 : 0.0; }

Table cmd_plan(const BoundConstants<>& c, const std::string& regime, CLI::Option* tokens_opt, double tokens,
               CLI::Option* iterations_opt, double iterations, double alpha, CLI::Option* batch_opt, double batch,
               const std::string& form_name) {
  std::vector<std::pair<std::string, Cell>> meta = {{"regime", regime},      {"delta0", c.delta0()},
                                                    {"smoothness", c.smoothness()}, {"sigma", c.noise_scale()},
                                                    {"rho", c.norm_equiv()}};
  std::vector<std::pair<std::string, double>> v;
  const bool by_tokens = tokens_opt->count() > 0;
  const bool by_iterations = iterations_opt->count() > 0;
  if (by_tokens == by_iterations) throw DomainError("give exactly one of --tokens or --iterations");
  if (by_tokens) meta.emplace_back("tokens", tokens);
  if (by_iterations) meta.emplace_back("iterations", iterations);

  if (regime == "fixed-momentum") {
    meta.emplace_back("alpha", alpha);
    FixedMomentumOptimum o{};
    if (by_iterations) {
      o = thm1_iteration(c, alpha, batch_opt->count() ? batch : 1.0, iterations);
    } else {
      o = thm1_token(c, alpha, tokens, batch_opt->count() ? std::optional<double>(batch) : std::nullopt);
    }
    v = {{"eta_star", o.eta_star}, {"b_star", o.b_star}, {"risk_star", o.risk_star}, {"b_clamped", flag(o.b_clamped)}};
    if (by_tokens) {
      v.emplace_back("k_star", tokens / o.b_star);
      if (c.rho_sigma() > 0) v.emplace_back("burn_in_tokens", thm1_burn_in_tokens(c, alpha));
    }
  } else if (regime == "fixed-batch") {
    if (!batch_opt->count()) throw DomainError("fixed-batch plan needs --batch");
    meta.emplace_back("batch", batch);
    meta.emplace_back("form", form_name);
    const ProxyForm form = form_name == "exact" ? ProxyForm::ExactBound : ProxyForm::MainText;
    if (form_name != "exact" && form_name != "main") throw DomainError("--form must be main or exact");
    const Budget<> budget = by_tokens ? Budget<>::tokens(tokens) : Budget<>::iterations(iterations);
    const FixedBatchOptimum o = thm2_fixed_batch(c, batch, budget, form);
    v = {{"alpha_star", o.alpha_star},
         {"eta_star", o.eta_star},
         {"risk_star", o.risk_star},
         {"alpha_clamped", flag(o.alpha_clamped)},
         {"c2_tilde", o.c2_tilde},
         {"c3_tilde", o.c3_tilde},
         {"burn_in_term", o.burn_in_term},
         {"smoothness_term", o.smoothness_term},
         {"dropped_terms_lower_order", flag(o.dropped_terms_lower_order)}};
  } else if (regime == "joint") {
    if (!by_tokens) throw DomainError("joint plan needs --tokens");
    const JointOptimum o = thm3_joint(c, tokens);
    v = {{"alpha_star", o.alpha_star},
         {"b_star", o.b_star},
         {"eta_star", o.eta_star},
         {"k_star", o.k_star},
         {"risk_star", o.risk_star},
         {"cubic_residual", o.cubic_residual},
         {"u0", o.u0},
         {"u1", o.u1},
         {"asymptotic_alpha", o.asymptotic_alpha},
         {"asymptotic_b", o.asymptotic_b},
         {"asymptotic_eta", o.asymptotic_eta},
         {"asymptotic_k", o.asymptotic_k},
         {"alpha_clamped", flag(o.alpha_clamped)},
         {"b_clamped", flag(o.b_clamped)}};
  } else {
    throw DomainError("--regime must be fixed-momentum, fixed-batch or joint");
  }
  return report_table("plan", meta, v);
}

std::vector<Quantity> fitted_quantities(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::Free:
    case ConstraintKind::CappedB:
      return {Quantity::Eta, Quantity::Alpha, Quantity::Batch, Quantity::Risk};
    case ConstraintKind::FixedAlpha:
      return {Quantity::Eta, Quantity::Batch, Quantity::Risk};
    case ConstraintKind::FixedB:
      return {Quantity::Eta, Quantity::Alpha, Quantity::Risk};
    case ConstraintKind::FixedEta:
      return {Quantity::Alpha, Quantity::Batch, Quantity::Risk};
    case ConstraintKind::FixedAlphaAndB:
      return {Quantity::Eta, Quantity::Risk};
  }
  return {};
}

void emit(const Table& t, const Common& common, const std::string& default_format, std::ostream& out) {
  const Format f = format_from_string(common.format.empty() ? default_format : common.format);
  const std::string text = write(t, f);
  if (common.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.out, std::ios::binary);
  if (!file) throw DomainError("cannot open output file " + common.out);
  file << text;
}

void report_error(std::ostream& err, ErrorCode code, const std::string& kind, const std::string& message) {
  nlohmann::json j;
  j["error"] = kind;
  j["code"] = static_cast<int>(code);
  j["message"] = message;
  err << j.dump() << "\n";
}

std::string error_kind(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk:
      return "ok";
    case ErrorCode::kInvalidConfig:
      return "invalid-config";
    case ErrorCode::kInfeasible:
      return "infeasible";
    case ErrorCode::kNumerical:
      return "numerical";
  }
  return "unknown";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperparameter scaling laws for momentum LMO optimizers", "lmoscale"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--config", common.config, "JSON file of option values; explicit flags override it");
  app.add_option("--out", common.out, "output file (default: stdout)");
  app.add_option("--format", common.format, "csv or json");
  app.add_option("--seed", common.seed, "master seed");
  app.add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1u, 1024u));

  // plan
  auto* plan = app.add_subcommand("plan", "closed-form optimal hyperparameters");
  ConstantOptions plan_c;
  plan_c.add(plan);
  std::string plan_regime;
  double plan_tokens = 0, plan_iterations = 0, plan_alpha = 1.0, plan_batch = 1.0;
  std::string plan_form = "main";
  plan->add_option("--regime", plan_regime, "fixed-momentum, fixed-batch or joint")->required();
  auto* plan_tokens_opt = plan->add_option("--tokens", plan_tokens, "token budget T");
  auto* plan_iter_opt = plan->add_option("--iterations", plan_iterations, "iteration budget K");
  plan->add_option("--alpha", plan_alpha, "momentum complement (fixed-momentum)");
  auto* plan_batch_opt = plan->add_option("--batch", plan_batch, "batch size");
  plan->add_option("--form", plan_form, "fixed-batch proxy form: main or exact");

  // verify
  auto* verify = app.add_subcommand("verify", "grid search over (eta, alpha, b) per token budget, with fits");
  ConstantOptions verify_c;
  verify_c.add(verify);
  std::string verify_constraint = "free", verify_objective = "risk-t";
  double verify_value = 0.0, verify_alpha = 0.0, verify_t_lo = 1e2, verify_t_hi = 1e22, verify_w_lo = 0.0, verify_w_hi = 0.0;
  int verify_points = 100;
  verify->add_option("--constraint", verify_constraint, "free, fixed-alpha, fixed-b, fixed-eta, capped-b or fixed-alpha-b");
  verify->add_option("--value", verify_value, "value of the constrained parameter (b for fixed-alpha-b)");
  verify->add_option("--alpha", verify_alpha, "alpha for fixed-alpha-b");
  verify->add_option("--objective", verify_objective, "risk-t, simplified, leading or exact");
  verify->add_option("--points", verify_points, "grid points per axis");
  verify->add_option("--t-lo", verify_t_lo, "smallest token budget");
  verify->add_option("--t-hi", verify_t_hi, "largest token budget");
  verify->add_option("--window-lo", verify_w_lo, "fit window lower end in T");
  verify->add_option("--window-hi", verify_w_hi, "fit window upper end in T");

  // transfer
  auto* transfer_cmd = app.add_subcommand("transfer", "extrapolate a tuned configuration to a larger budget");
  std::string tr_regime, tr_setting;
  double tr_t0 = 0, tr_b0 = 1, tr_eta0 = 0, tr_alpha0 = 1, tr_t1 = 0, tr_b_max = 0, tr_b1 = 0;
  transfer_cmd->add_option("--regime", tr_regime, "A, B, C, D or sgd");
  transfer_cmd->add_option("--setting", tr_setting, "batch change: lmo-fixed-alpha, lmo-tuned-alpha or sgd");
  transfer_cmd->add_option("--t0", tr_t0, "tuned budget")->required();
  transfer_cmd->add_option("--b0", tr_b0, "tuned batch");
  transfer_cmd->add_option("--eta0", tr_eta0, "tuned step size")->required();
  transfer_cmd->add_option("--alpha0", tr_alpha0, "tuned momentum complement");
  transfer_cmd->add_option("--t1", tr_t1, "target budget")->required();
  auto* tr_b_max_opt = transfer_cmd->add_option("--b-max", tr_b_max, "batch cap");
  auto* tr_b1_opt = transfer_cmd->add_option("--b1", tr_b1, "target batch (with --setting)");

  // contour
  auto* contour = app.add_subcommand("contour", "iso-performance level set in (b, K)");
  ConstantOptions contour_c;
  contour_c.add(contour);
  double ct_alpha = 1.0, ct_target = 0.0, ct_k_lo = 1.0, ct_k_hi = 1e12;
  int ct_points = 100;
  contour->add_option("--alpha", ct_alpha, "momentum complement");
  contour->add_option("--target", ct_target, "level c of the eta-tuned bound")->required();
  contour->add_option("--k-lo", ct_k_lo, "smallest K of the grid");
  contour->add_option("--k-hi", ct_k_hi, "largest K of the grid");
  contour->add_option("--k-points", ct_points, "log-spaced K grid size");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "rate exponents, batch paths and noise sensitivity");
  double an_phi = 0, an_gamma = 0, an_delta = 0, an_kappa = 0, an_lambda = 0, an_p = 0, an_q = 0.5, an_b = 1,
         an_t = 1, an_sigma_q = 1, an_tail = 2, an_e0 = 0;
  auto* an_phi_opt = analyze->add_option("--phi", an_phi, "batch growth exponent b ~ T^phi");
  auto* an_gamma_opt = analyze->add_option("--gamma", an_gamma, "alpha decay exponent (custom schedule)");
  auto* an_delta_opt = analyze->add_option("--delta", an_delta, "eta decay exponent (custom schedule)");
  auto* an_kappa_opt = analyze->add_option("--kappa", an_kappa, "eta ~ b^kappa");
  auto* an_lambda_opt = analyze->add_option("--lambda", an_lambda, "eta ~ K^-lambda");
  auto* an_p_opt = analyze->add_option("--p", an_p, "batch path exponent for q_eff");
  auto* an_q_opt = analyze->add_option("--q", an_q, "noise exponent q");
  auto* an_tail_opt = analyze->add_option("--tail-p", an_tail, "heavy-tail moment p (sets q = 1 - 1/p)");
  analyze->add_option("--sigma-q", an_sigma_q, "noise scale at exponent q");
  auto* an_e0_opt = analyze->add_option("--e0", an_e0, "initial momentum error");
  analyze->add_option("--b", an_b, "batch size for the sensitivity report");
  analyze->add_option("--t", an_t, "token budget for the sensitivity report");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "stochastic LMO runs on a synthetic objective");
  std::string sim_objective = "quadratic", sim_norm = "max", sim_rule = "lmo", sim_init = "matched";
  int sim_dim = 50, sim_rows = 8, sim_cols = 8, sim_reps = 8;
  double sim_spec_lo = 0.5, sim_spec_hi = 1.0, sim_sigma = 1.0, sim_delta0 = 1.0, sim_stable = 0;
  std::string sim_etas = "1e-3,3e-3,1e-2,3e-2,1e-1", sim_alphas = "0.1", sim_batches = "32",
              sim_tokens = "16384";
  simulate->add_option("--objective", sim_objective, "quadratic or least-squares");
  simulate->add_option("--dim", sim_dim, "quadratic dimension");
  simulate->add_option("--spectrum-lo", sim_spec_lo, "smallest curvature (linearly spaced)");
  simulate->add_option("--spectrum-hi", sim_spec_hi, "largest curvature");
  simulate->add_option("--rows", sim_rows, "least-squares rows");
  simulate->add_option("--cols", sim_cols, "least-squares columns");
  simulate->add_option("--noise-sigma", sim_sigma, "per-sample gradient noise scale");
  simulate->add_option("--delta0", sim_delta0, "initial suboptimality");
  auto* sim_stable_opt = simulate->add_option("--stable-index", sim_stable, "heavy-tailed noise index in (1, 2)");
  simulate->add_option("--norm", sim_norm, "euclidean, max or spectral");
  simulate->add_option("--rule", sim_rule, "lmo or sgd");
  simulate->add_option("--init", sim_init, "matched or zero momentum");
  simulate->add_option("--etas", sim_etas, "comma-separated step sizes");
  simulate->add_option("--alphas", sim_alphas, "comma-separated momentum complements");
  simulate->add_option("--batches", sim_batches, "comma-separated batch sizes");
  simulate->add_option("--tokens", sim_tokens, "comma-separated token budgets");
  simulate->add_option("--replicates", sim_reps, "runs per grid point");

  // compare-sgd
  auto* compare = app.add_subcommand("compare-sgd", "tuned SGD bound vs fixed-alpha LMO proxy across batch sizes");
  ConstantOptions compare_c;
  compare_c.add(compare);
  double cmp_tokens = 1e4, cmp_alpha = 0.1;
  std::string cmp_batches = "1,10,100,1000,10000,100000,1000000";
  compare->add_option("--tokens", cmp_tokens, "token budget");
  compare->add_option("--alpha", cmp_alpha, "LMO momentum complement");
  compare->add_option("--batches", cmp_batches, "comma-separated batch sizes");

  try {
    std::vector<std::string> args = assemble_args(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, ErrorCode::kInvalidConfig, "invalid-config", e.what());
    return static_cast<int>(ErrorCode::kInvalidConfig);
  } catch (const Error& e) {
    report_error(err, e.code(), error_kind(e.code()), e.what());
    return static_cast<int>(e.code());
  }

  try {
    if (plan->parsed()) {
      emit(cmd_plan(plan_c.make(), plan_regime, plan_tokens_opt, plan_tokens, plan_iter_opt, plan_iterations,
                    plan_alpha, plan_batch_opt, plan_batch, plan_form),
           common, "json", out);
    } else if (verify->parsed()) {
      GridSpec spec;
      spec.points_per_axis = verify_points;
      spec.tokens = {verify_t_lo, verify_t_hi};
      spec.objective = objective_from_string(verify_objective);
      const Constraint constraint{constraint_from_string(verify_constraint), verify_value, verify_alpha};
      const SweepResult r = sweep(verify_c.make(), spec, constraint, common.threads);
      std::vector<QuantityFit> fits;
      for (Quantity q : fitted_quantities(constraint.kind)) {
        try {
          fits.push_back({q, fit_sweep(r, q, {verify_w_lo, verify_w_hi})});
        } catch (const InfeasibleError&) {
          // too few usable points for this quantity; the table still carries the sweep
        }
      }
      emit(sweep_table(r, fits), common, "csv", out);
    } else if (transfer_cmd->parsed()) {
      const TunedConfig cfg{tr_t0, tr_b0, tr_eta0, tr_alpha0};
      TransferRequest req{cfg, tr_t1, "", std::nullopt};
      if (tr_b_max_opt->count()) req.b_max = tr_b_max;
      TransferResult r{};
      if (!tr_setting.empty()) {
        if (!tr_regime.empty()) throw DomainError("give either --regime or --setting");
        if (!tr_b1_opt->count()) throw DomainError("--setting needs --b1");
        req.rule = tr_setting;
        r = transfer_with_batch_change(cfg, tr_t1, tr_b1, batch_change_setting_from_string(tr_setting));
      } else {
        if (tr_regime.empty()) throw DomainError("transfer needs --regime or --setting");
        req.rule = tr_regime;
        r = transfer(cfg, tr_t1, transfer_regime_from_string(tr_regime), req.b_max);
      }
      emit(transfer_table(req, r), common, "json", out);
    } else if (contour->parsed()) {
      detail::require(ct_points >= 1, "--k-points must be >= 1");
      const ContourConstants cc = ContourConstants::from(contour_c.make(true), ct_alpha);
      const auto ks = log_uniform({ct_k_lo, ct_k_hi}, ct_points);
      emit(level_set_table(cc, level_set(cc, ct_target, ks)), common, "csv", out);
    } else if (analyze->parsed()) {
      std::vector<std::pair<std::string, Cell>> meta;
      std::vector<std::pair<std::string, double>> v;
      bool any = false;
      if (an_phi_opt->count()) {
        any = true;
        meta.emplace_back("phi", an_phi);
        PowerLawSchedule s{an_phi, 0, 0};
        if (an_gamma_opt->count() || an_delta_opt->count()) {
          if (!(an_gamma_opt->count() && an_delta_opt->count())) throw DomainError("give both --gamma and --delta");
          s.alpha_exp = an_gamma;
          s.eta_exp = an_delta;
          meta.emplace_back("gamma", an_gamma);
          meta.emplace_back("delta", an_delta);
        } else {
          const BatchPathPlan plan = cor2_batch_path(an_phi);
          s = plan.schedule;
          v.emplace_back("plan_gamma", s.alpha_exp);
          v.emplace_back("plan_delta", s.eta_exp);
          v.emplace_back("plan_rate", plan.rate_exponent);
          v.emplace_back("plan_optimal_rate", flag(plan.optimal_rate));
        }
        const RateExponents r = rate_exponents(s);
        for (int i = 0; i < 5; ++i) v.emplace_back("r" + std::to_string(i + 1), r.r[i]);
        v.emplace_back("overall_rate", r.overall);
        v.emplace_back("all_decay", flag(r.all_decay()));
        if (an_phi > 0.5 && an_phi < 1.0) {
          const AggressiveCeiling ceil = aggressive_ceiling(an_phi);
          v.emplace_back("ceiling_rate", ceil.rate_exponent);
          v.emplace_back("ceiling_k_exponent", ceil.k_exponent);
        }
      }
      if (an_kappa_opt->count() || an_lambda_opt->count() || an_p_opt->count()) {
        if (!(an_kappa_opt->count() && an_lambda_opt->count() && an_p_opt->count())) {
          throw DomainError("q_eff needs --kappa, --lambda and --p");
        }
        any = true;
        meta.emplace_back("kappa", an_kappa);
        meta.emplace_back("lambda", an_lambda);
        meta.emplace_back("p", an_p);
        const EffectiveEtaReport e = effective_eta_exponent({an_kappa, an_lambda, an_p});
        v.emplace_back("q_eff", e.q_eff);
        if (e.threshold_p) v.emplace_back("threshold_p", *e.threshold_p);
        v.emplace_back("alpha_saturates", flag(e.alpha_saturates));
      }
      if (an_q_opt->count() || an_tail_opt->count()) {
        any = true;
        NoiseModel n;
        if (an_tail_opt->count()) {
          n = NoiseModel::heavy_tailed(an_tail, an_sigma_q);
          meta.emplace_back("tail_p", an_tail);
        } else {
          n.q = an_q;
          n.sigma_q = an_sigma_q;
        }
        if (an_e0_opt->count()) n.e0 = an_e0;
        meta.emplace_back("q", n.q);
        meta.emplace_back("b", an_b);
        meta.emplace_back("t", an_t);
        const SensitivityReport s = sensitivity_q(n, an_b, an_t);
        meta.emplace_back("preference", to_string(s.preference));
        v.insert(v.end(), {{"alpha_b_exp", s.alpha_b_exp},
                           {"alpha_k_exp", s.alpha_k_exp},
                           {"eta_b_exp", s.eta_b_exp},
                           {"eta_k_exp", s.eta_k_exp},
                           {"perf_b_exp", s.perf_b_exp},
                           {"perf_t_exp", s.perf_t_exp},
                           {"alpha_scale", s.alpha_scale},
                           {"eta_scale", s.eta_scale},
                           {"perf_scale", s.perf_scale}});
        if (s.burn_in_coefficient) v.emplace_back("burn_in_coefficient", *s.burn_in_coefficient);
      }
      if (!any) throw DomainError("analyze needs --phi, --kappa/--lambda/--p, or --q/--tail-p");
      emit(report_table("analyze", meta, v), common, "json", out);
    } else if (simulate->parsed()) {
      ObjectiveSpec os;
      os.kind = objective_kind_from_string(sim_objective);
      if (os.kind == ObjectiveKind::NoisyQuadratic) {
        detail::require(sim_dim >= 1, "--dim must be >= 1");
        for (int i = 0; i < sim_dim; ++i) {
          os.spectrum.push_back(sim_dim == 1 ? sim_spec_hi
                                             : sim_spec_lo + (sim_spec_hi - sim_spec_lo) * i / (sim_dim - 1));
        }
      }
      os.rows = sim_rows;
      os.cols = sim_cols;
      os.instance_seed = common.seed;
      os.noise_sigma = sim_sigma;
      os.delta0 = sim_delta0;
      if (sim_stable_opt->count()) os.stable_index = sim_stable;
      const SyntheticObjective obj(os);
      SimGrid grid;
      grid.eta = parse_list(sim_etas, "--etas");
      grid.alpha = parse_list(sim_alphas, "--alphas");
      grid.batch = parse_list(sim_batches, "--batches");
      grid.tokens = parse_list(sim_tokens, "--tokens");
      grid.replicates = sim_reps;
      grid.norm = norm_kind_from_string(sim_norm);
      grid.rule = update_rule_from_string(sim_rule);
      grid.init = momentum_init_from_string(sim_init);
      grid.seed = common.seed;
      emit(sim_table(sweep_sim(obj, grid, common.threads), grid), common, "csv", out);
    } else if (compare->parsed()) {
      const auto batches = parse_list(cmp_batches, "--batches");
      const BatchComparison cmp = compare_batches(compare_c.make(true), cmp_alpha, cmp_tokens, batches);
      emit(comparison_table(cmp, cmp_alpha, cmp_tokens), common, "csv", out);
    }
  } catch (const Error& e) {
    report_error(err, e.code(), error_kind(e.code()), e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    report_error(err, ErrorCode::kNumerical, "numerical", e.what());
    return static_cast<int>(ErrorCode::kNumerical);
  }
  return 0;
}

}  // namespace lmoscale
