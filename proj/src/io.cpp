// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

#include "lmoscale/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace lmoscale {

using ojson = nlohmann::ordered_json;

const Cell* Table::find_meta(const std::string& key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return &v;
  }
  return nullptr;
}

double Table::meta_number(const std::string& key) const {
  const Cell* c = find_meta(key);
  if (!c) throw DomainError("missing metadata entry '" + key + "'");
  return as_number(*c);
}

std::string Table::meta_text(const std::string& key) const {
  const Cell* c = find_meta(key);
  if (!c) throw DomainError("missing metadata entry '" + key + "'");
  return as_text(*c);
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw DomainError("missing column '" + name + "'");
}

std::string to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw DomainError("unknown format '" + s + "' (expected csv or json)");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

double parse_number(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size()) throw DomainError("not a number: '" + s + "'");
  return v;
}

double as_number(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return *d;
  return parse_number(std::get<std::string>(c));
}

std::string as_text(const Cell& c) {
  if (const std::string* s = std::get_if<std::string>(&c)) return *s;
  return format_number(std::get<double>(c));
}

namespace {

void check_text(const std::string& s) {
  if (s.find_first_of(",\n\r") != std::string::npos) throw DomainError("CSV text field contains a separator: " + s);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

ojson cell_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_number(*d);
  }
  return std::get<std::string>(c);
}

Cell json_cell(const ojson& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? 1.0 : 0.0;
  throw DomainError("unsupported JSON cell");
}

}  // namespace

std::string write_csv(const Table& t) {
  std::string out = "# schema: " + t.schema + "\n";
  for (const auto& [k, v] : t.meta) {
    check_text(k);
    const std::string text = as_text(v);
    if (text.find('\n') != std::string::npos) throw DomainError("metadata value contains a newline");
    out += "# " + k + ": " + text + "\n";
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    check_text(t.columns[i]);
    out += (i ? "," : "") + t.columns[i];
  }
  out += "\n";
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) throw DomainError("row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string text = as_text(row[i]);
      check_text(text);
      out += (i ? "," : "") + text;
    }
    out += "\n";
  }
  return out;
}

Table read_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ", 2);
      if (colon == std::string::npos) throw DomainError("malformed CSV comment line: " + line);
      const std::string key = line.substr(2, colon - 2);
      const std::string value = line.substr(colon + 2);
      if (key == "schema") {
        t.schema = value;
      } else {
        t.meta.emplace_back(key, value);
      }
      continue;
    }
    auto fields = split(line);
    if (!header) {
      t.columns = std::move(fields);
      header = true;
      continue;
    }
    if (fields.size() != t.columns.size()) throw DomainError("CSV row width differs from header");
    std::vector<Cell> row(fields.begin(), fields.end());
    t.rows.push_back(std::move(row));
  }
  if (t.schema.empty()) throw DomainError("CSV input lacks a schema line");
  return t;
}

std::string write_json(const Table& t) {
  ojson j;
  j["schema"] = t.schema;
  ojson meta = ojson::object();
  for (const auto& [k, v] : t.meta) meta[k] = cell_json(v);
  j["meta"] = meta;
  j["columns"] = t.columns;
  ojson rows = ojson::array();
  for (const auto& row : t.rows) {
    ojson r = ojson::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

Table read_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
  Table t;
  try {
    t.schema = j.at("schema").get<std::string>();
    for (const auto& [k, v] : j.at("meta").items()) t.meta.emplace_back(k, json_cell(v));
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) {
      std::vector<Cell> row;
      for (const auto& c : r) row.push_back(json_cell(c));
      if (row.size() != t.columns.size()) throw DomainError("JSON row width differs from columns");
      t.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed table JSON: ") + e.what());
  }
  return t;
}

std::string write(const Table& t, Format f) { return f == Format::Csv ? write_csv(t) : write_json(t); }

Table read(const std::string& text, Format f) { return f == Format::Csv ? read_csv(text) : read_json(text); }

namespace {

void expect_schema(const Table& t, const std::string& schema) {
  if (t.schema != schema) throw DomainError("expected schema " + schema + ", got " + t.schema);
}

Cell optional_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{std::string()}; }

std::optional<double> cell_optional(const Cell& c) {
  if (const std::string* s = std::get_if<std::string>(&c); s && s->empty()) return std::nullopt;
  return as_number(c);
}

Quantity quantity_from_string(const std::string& s) {
  for (Quantity q : {Quantity::Eta, Quantity::Alpha, Quantity::Batch, Quantity::Risk}) {
    if (to_string(q) == s) return q;
  }
  throw DomainError("unknown quantity '" + s + "'");
}

ContourRegime contour_regime_from_string(const std::string& s) {
  for (ContourRegime r : {ContourRegime::IterationLimited, ContourRegime::Intermediate, ContourRegime::BatchLimited}) {
    if (to_string(r) == s) return r;
  }
  throw DomainError("unknown contour regime '" + s + "'");
}

}  // namespace

Table sweep_table(const SweepResult& r, const std::vector<QuantityFit>& fits) {
  Table t;
  t.schema = "lmoscale.sweep.v1";
  t.meta = {{"objective", to_string(r.objective)},
            {"constraint", to_string(r.constraint.kind)},
            {"constraint_value", r.constraint.value},
            {"constraint_alpha", r.constraint.alpha}};
  for (const auto& qf : fits) {
    const std::string p = "fit." + to_string(qf.quantity) + ".";
    t.meta.emplace_back(p + "exponent", qf.fit.exponent);
    t.meta.emplace_back(p + "coefficient", qf.fit.coefficient);
    t.meta.emplace_back(p + "r_squared", qf.fit.r_squared);
    t.meta.emplace_back(p + "t_lo", qf.fit.window.t_lo);
    t.meta.emplace_back(p + "t_hi", qf.fit.window.t_hi);
    t.meta.emplace_back(p + "n_points", static_cast<double>(qf.fit.n_points));
  }
  t.columns = {"t", "eta", "alpha", "b", "risk", "clamped"};
  for (const auto& rec : r.records) {
    t.rows.push_back({rec.t, rec.best.eta, rec.best.alpha, rec.best.batch, rec.best_risk,
                      static_cast<double>(rec.clamped)});
  }
  return t;
}

SweepResult sweep_from_table(const Table& t) {
  expect_schema(t, "lmoscale.sweep.v1");
  SweepResult r;
  r.objective = objective_from_string(t.meta_text("objective"));
  r.constraint = {constraint_from_string(t.meta_text("constraint")), t.meta_number("constraint_value"),
                  t.find_meta("constraint_alpha") ? t.meta_number("constraint_alpha") : 0.0};
  const std::size_t it = t.column("t"), ie = t.column("eta"), ia = t.column("alpha"), ib = t.column("b"),
                    ir = t.column("risk"), ic = t.column("clamped");
  for (const auto& row : t.rows) {
    SweepRecord rec{as_number(row[it]),
                    {as_number(row[ie]), as_number(row[ia]), as_number(row[ib])},
                    as_number(row[ir]),
                    static_cast<std::uint32_t>(as_number(row[ic]))};
    r.records.push_back(rec);
  }
  return r;
}

std::vector<QuantityFit> fits_from_table(const Table& t) {
  std::vector<QuantityFit> out;
  for (const auto& [k, v] : t.meta) {
    if (k.rfind("fit.", 0) != 0 || k.size() < 13 || k.substr(k.size() - 9) != ".exponent") continue;
    const std::string q = k.substr(4, k.size() - 13);
    const std::string p = "fit." + q + ".";
    FitResult f{};
    f.exponent = as_number(v);
    f.coefficient = t.meta_number(p + "coefficient");
    f.r_squared = t.meta_number(p + "r_squared");
    f.window = {t.meta_number(p + "t_lo"), t.meta_number(p + "t_hi")};
    f.n_points = static_cast<int>(t.meta_number(p + "n_points"));
    out.push_back({quantity_from_string(q), f});
  }
  return out;
}

Table level_set_table(const ContourConstants& cc, const LevelSet& ls) {
  Table t;
  t.schema = "lmoscale.contour.v1";
  t.meta = {{"alpha", cc.alpha},   {"c_det", cc.c_det}, {"c_burn", cc.c_burn}, {"c_floor", cc.c_floor},
            {"target", ls.target}, {"k_min", ls.k_min}, {"b_min", ls.b_min},   {"k0", ls.k0}};
  t.columns = {"k", "b", "u", "regime", "frac_det", "frac_burn", "frac_floor"};
  for (const auto& s : ls.samples) {
    t.rows.push_back({s.k, s.b, s.u, to_string(s.regime), s.frac_det, s.frac_burn, s.frac_floor});
  }
  return t;
}

LevelSet level_set_from_table(const Table& t) {
  expect_schema(t, "lmoscale.contour.v1");
  LevelSet ls{};
  ls.target = t.meta_number("target");
  ls.k_min = t.meta_number("k_min");
  ls.b_min = t.meta_number("b_min");
  ls.k0 = t.meta_number("k0");
  const std::size_t ik = t.column("k"), ib = t.column("b"), iu = t.column("u"), ig = t.column("regime"),
                    id = t.column("frac_det"), ir = t.column("frac_burn"), iff = t.column("frac_floor");
  for (const auto& row : t.rows) {
    ls.samples.push_back({as_number(row[ik]), as_number(row[ib]), as_number(row[iu]), as_number(row[id]),
                          as_number(row[ir]), as_number(row[iff]), contour_regime_from_string(as_text(row[ig]))});
  }
  return ls;
}

Table transfer_table(const TransferRequest& req, const TransferResult& r) {
  Table t;
  t.schema = "lmoscale.transfer.v1";
  t.meta = {{"rule", req.rule},         {"t0", req.cfg.t0},         {"b0", req.cfg.b0},
            {"eta0", req.cfg.eta0},     {"alpha0", req.cfg.alpha0}, {"t1", req.t1},
            {"b_max", optional_cell(req.b_max)}};
  t.columns = {"eta1",          "alpha1",          "b1",          "raw_eta",         "raw_alpha", "raw_b",
               "alpha_above_one", "batch_below_one", "batch_above_cap", "c_eta", "c_alpha"};
  t.rows.push_back({r.params.eta, r.params.alpha, r.params.batch, r.raw.eta, r.raw.alpha, r.raw.batch,
                    r.flags.alpha_above_one ? 1.0 : 0.0, r.flags.batch_below_one ? 1.0 : 0.0,
                    r.flags.batch_above_cap ? 1.0 : 0.0, optional_cell(r.invariants.c_eta),
                    optional_cell(r.invariants.c_alpha)});
  return t;
}

TransferResult transfer_from_table(const Table& t) {
  expect_schema(t, "lmoscale.transfer.v1");
  if (t.rows.size() != 1) throw DomainError("transfer table must have exactly one row");
  const auto& row = t.rows.front();
  auto num = [&](const char* col) { return as_number(row[t.column(col)]); };
  TransferResult r{};
  r.params = {num("eta1"), num("alpha1"), num("b1")};
  r.raw = {num("raw_eta"), num("raw_alpha"), num("raw_b")};
  r.flags.alpha_above_one = num("alpha_above_one") != 0.0;
  r.flags.batch_below_one = num("batch_below_one") != 0.0;
  r.flags.batch_above_cap = num("batch_above_cap") != 0.0;
  r.invariants.c_eta = cell_optional(row[t.column("c_eta")]);
  r.invariants.c_alpha = cell_optional(row[t.column("c_alpha")]);
  return r;
}

Table sim_table(const SimSweep& s, const SimGrid& grid) {
  Table t;
  t.schema = "lmoscale.simulate.v1";
  t.meta = {{"norm", to_string(grid.norm)},
            {"rule", to_string(grid.rule)},
            {"init", to_string(grid.init)},
            {"replicates", static_cast<double>(grid.replicates)},
            {"seed", std::to_string(grid.seed)}};
  t.columns = {"t", "eta", "alpha", "b", "steps", "mean_metric", "std_error", "aborted", "best"};
  for (const auto& p : s.points) {
    bool best = false;
    for (const auto& rec : s.best.records) {
      if (rec.t == p.t && rec.best.eta == p.params.eta && rec.best.alpha == p.params.alpha &&
          rec.best.batch == p.params.batch) {
        best = true;
      }
    }
    t.rows.push_back({p.t, p.params.eta, p.params.alpha, p.params.batch, static_cast<double>(p.steps),
                      p.mean_metric, p.std_error, static_cast<double>(p.aborted), best ? 1.0 : 0.0});
  }
  return t;
}

std::vector<SimPoint> sim_points_from_table(const Table& t) {
  expect_schema(t, "lmoscale.simulate.v1");
  std::vector<SimPoint> out;
  for (const auto& row : t.rows) {
    auto num = [&](const char* col) { return as_number(row[t.column(col)]); };
    out.push_back({num("t"),
                   {num("eta"), num("alpha"), num("b")},
                   static_cast<int>(num("steps")),
                   num("mean_metric"),
                   num("std_error"),
                   static_cast<int>(num("aborted"))});
  }
  return out;
}

Table comparison_table(const BatchComparison& c, double alpha, double t) {
  Table out;
  out.schema = "lmoscale.compare-sgd.v1";
  out.meta = {{"alpha", alpha},
              {"t", t},
              {"sgd_relative_spread", c.sgd_relative_spread},
              {"lmo_argmin_b", c.batches[c.lmo_argmin]},
              {"lmo_interior", c.lmo_interior ? 1.0 : 0.0}};
  out.columns = {"b", "sgd_eta", "sgd_value", "sgd_rate", "sgd_capped", "lmo_value"};
  for (std::size_t i = 0; i < c.batches.size(); ++i) {
    const auto& s = c.sgd[i];
    out.rows.push_back({c.batches[i], s.eta_star, s.value, s.rate, s.capped ? 1.0 : 0.0, c.lmo[i]});
  }
  return out;
}

Table report_table(const std::string& kind, const std::vector<std::pair<std::string, Cell>>& meta,
                   const std::vector<std::pair<std::string, double>>& values) {
  Table t;
  t.schema = "lmoscale." + kind + ".v1";
  t.meta = meta;
  t.columns = {"key", "value"};
  for (const auto& [k, v] : values) t.rows.push_back({k, v});
  return t;
}

}  // namespace lmoscale
