// Copyright 2026 The lmoscale Authors
// SPDX-License-Identifier: Apache-2.0

// Tabular records and their CSV / JSON encodings.
//
// CSV layout:
//   # schema: lmoscale.<kind>.v1
//   # <meta key>: <value>        (one line per metadata entry)
//   col1,col2,...
//   v11,v12,...
// Numbers are written as %.16e, which round-trips every double.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lmoscale/contour.hpp"
#include "lmoscale/grid.hpp"
#include "lmoscale/sgd.hpp"
#include "lmoscale/sim.hpp"
#include "lmoscale/transfer.hpp"

namespace lmoscale {

using Cell = std::variant<double, std::string>;

struct Table {
  std::string schema;
  std::vector<std::pair<std::string, Cell>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  const Cell* find_meta(const std::string& key) const;
  double meta_number(const std::string& key) const;
  std::string meta_text(const std::string& key) const;
  std::size_t column(const std::string& name) const;
};

enum class Format { Csv, Json };

std::string to_string(Format f);
Format format_from_string(const std::string& s);

std::string format_number(double v);
double parse_number(const std::string& s);
double as_number(const Cell& c);
std::string as_text(const Cell& c);

std::string write_csv(const Table& t);
/// Cells come back as text; the record readers convert them.
Table read_csv(const std::string& text);
std::string write_json(const Table& t);
Table read_json(const std::string& text);
std::string write(const Table& t, Format f);
Table read(const std::string& text, Format f);

struct QuantityFit {
  Quantity quantity;
  FitResult fit;
};

Table sweep_table(const SweepResult& r, const std::vector<QuantityFit>& fits = {});
SweepResult sweep_from_table(const Table& t);
std::vector<QuantityFit> fits_from_table(const Table& t);

Table level_set_table(const ContourConstants& cc, const LevelSet& ls);
LevelSet level_set_from_table(const Table& t);

struct TransferRequest {
  TunedConfig cfg;
  double t1;
  std::string rule;  // regime letter or batch-change setting
  std::optional<double> b_max;
};

Table transfer_table(const TransferRequest& req, const TransferResult& r);
TransferResult transfer_from_table(const Table& t);

Table sim_table(const SimSweep& s, const SimGrid& grid);
std::vector<SimPoint> sim_points_from_table(const Table& t);

Table comparison_table(const BatchComparison& c, double alpha, double t);

/// Two-column key/value report.
Table report_table(const std::string& kind, const std::vector<std::pair<std::string, Cell>>& meta,
                   const std::vector<std::pair<std::string, double>>& values);

}  // namespace lmoscale
