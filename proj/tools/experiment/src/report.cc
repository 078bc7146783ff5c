// tools/experiment/src/report.cc

// Copyright 2026  The SWCE Workbench Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "swce/experiment/report.h"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "swce/common/errors.h"

namespace swce::experiment {

using nlohmann::json;

std::string result_json(const RunResult& r) {
  json j{{"pipeline", r.pipeline},       {"model", r.model},
         {"loss", r.loss},               {"freeze_steps", r.freeze_steps},
         {"seed", r.seed},               {"dev_acc", r.dev_accuracy},
         {"test_acc", r.test_accuracy},  {"test_margin", r.test_margin},
         {"best_epoch", r.best_epoch},   {"optimizer_steps", r.optimizer_steps}};
  return j.dump(2) + "\n";
}

RunResult parse_result_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunResult r;
    r.pipeline = j.at("pipeline").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.loss = j.at("loss").get<std::string>();
    r.freeze_steps = j.at("freeze_steps").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.dev_accuracy = j.at("dev_acc").get<double>();
    r.test_accuracy = j.at("test_acc").get<double>();
    r.test_margin = j.at("test_margin").get<double>();
    r.best_epoch = j.at("best_epoch").get<std::size_t>();
    r.optimizer_steps = j.at("optimizer_steps").get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("result.json: ") + e.what());
  }
}

double round2(double percent) { return std::round(percent * 100.0) / 100.0; }

namespace {

struct Moments {
  double mean = 0.0;
  std::optional<double> std;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  if (v.size() >= 2) {
    double ss = 0.0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return m;
}

std::string fixed2(double v) {
  // Avoid printing "-0.00".
  const double r = round2(v);
  return fmt::format("{:.2f}", r == 0.0 ? 0.0 : r);
}

std::string fixed2(const std::optional<double>& v) { return v ? fixed2(*v) : "n/a"; }

}  // namespace

std::vector<ReportRow> aggregate(const std::vector<RunResult>& results) {
  struct Cell {
    ReportRow row;
    std::vector<double> dev, test, margin;
  };
  std::vector<Cell> cells;
  for (const RunResult& r : results) {
    Cell* cell = nullptr;
    for (Cell& c : cells)
      if (c.row.pipeline == r.pipeline && c.row.model == r.model && c.row.loss == r.loss &&
          c.row.freeze_steps == r.freeze_steps)
        cell = &c;
    if (!cell) {
      cells.push_back({});
      cell = &cells.back();
      cell->row.pipeline = r.pipeline;
      cell->row.model = r.model;
      cell->row.loss = r.loss;
      cell->row.freeze_steps = r.freeze_steps;
    }
    cell->dev.push_back(100.0 * r.dev_accuracy);
    cell->test.push_back(100.0 * r.test_accuracy);
    cell->margin.push_back(r.test_margin);
  }
  std::vector<ReportRow> rows;
  for (Cell& c : cells) {
    const Moments dev = moments(c.dev), test = moments(c.test), margin = moments(c.margin);
    c.row.seeds = c.dev.size();
    c.row.dev_mean = dev.mean;
    c.row.dev_std = dev.std;
    c.row.test_mean = test.mean;
    c.row.test_std = test.std;
    c.row.margin_mean = margin.mean;
    c.row.gap = round2(dev.mean) - round2(test.mean);
    rows.push_back(c.row);
  }
  return rows;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = std::string(kReportCsvHeader) + "\n";
  for (const ReportRow& r : rows)
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.pipeline, r.model, r.loss,
                       r.freeze_steps, fixed2(r.dev_mean), fixed2(r.dev_std), fixed2(r.test_mean),
                       fixed2(r.test_std), fixed2(r.gap));
  return out;
}

std::string report_markdown(const std::string& title, const std::vector<ReportRow>& rows) {
  auto pm = [](double mean, const std::optional<double>& sd) {
    return sd ? fmt::format("{} ± {}", fixed2(mean), fixed2(*sd)) : fixed2(mean);
  };
  std::string out = fmt::format("# {}\n\n", title);
  out += "| Pipeline | Model | Loss | Freeze steps | Seeds | Dev Acc (%) | Test Acc (%) | "
         "Dev-Test gap | Test margin |\n";
  out += "|---|---|---|---:|---:|---:|---:|---:|---:|\n";
  for (const ReportRow& r : rows)
    out += fmt::format("| {} | {} | {} | {} | {} | {} | {} | {} | {:.4f} |\n", r.pipeline,
                       r.model, r.loss, r.freeze_steps, r.seeds, pm(r.dev_mean, r.dev_std),
                       pm(r.test_mean, r.test_std), fixed2(r.gap), r.margin_mean);

  std::string comparison;
  for (const ReportRow& ce : rows) {
    if (ce.loss != "CE") continue;
    for (const ReportRow& sw : rows) {
      if (sw.loss != "SWCE" || sw.pipeline != ce.pipeline || sw.model != ce.model ||
          sw.freeze_steps != ce.freeze_steps)
        continue;
      const char* gap_word = std::abs(sw.gap) < std::abs(ce.gap)   ? "smaller"
                             : std::abs(sw.gap) > std::abs(ce.gap) ? "larger"
                                                                   : "equal";
      const char* margin_word = sw.margin_mean > ce.margin_mean   ? "higher"
                                : sw.margin_mean < ce.margin_mean ? "lower"
                                                                  : "equal";
      comparison += fmt::format(
          "- {} / {} / freeze {}: dev-test gap {} (CE) vs {} (SWCE), {} in magnitude with "
          "SWCE; mean test margin {:.4f} (CE) vs {:.4f} (SWCE), {} with SWCE; test accuracy "
          "{} vs {}.\n",
          ce.pipeline, ce.model, ce.freeze_steps, fixed2(ce.gap), fixed2(sw.gap), gap_word,
          ce.margin_mean, sw.margin_mean, margin_word, fixed2(ce.test_mean),
          fixed2(sw.test_mean));
    }
  }
  if (!comparison.empty()) out += "\n## CE versus SWCE\n\n" + comparison;
  return out;
}

void emit_report(const std::filesystem::path& dir, const std::string& title,
                 const std::vector<ReportRow>& rows) {
  if (rows.empty()) throw ContractError("emit_report: no rows");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "report.csv", std::ios::binary | std::ios::trunc) << report_csv(rows);
  std::ofstream(dir / "report.md", std::ios::binary | std::ios::trunc)
      << report_markdown(title, rows);
}

void report_from_dir(const std::filesystem::path& dir) {
  std::ifstream index(dir / "runs.txt");
  if (!index) throw std::runtime_error("no runs.txt in " + dir.string());
  std::string title;
  std::getline(index, title);
  std::vector<RunResult> results;
  std::string rel;
  while (std::getline(index, rel)) {
    if (rel.empty()) continue;
    std::ifstream f(dir / rel / "result.json");
    if (!f) throw std::runtime_error("missing result for run " + rel);
    std::ostringstream text;
    text << f.rdbuf();
    results.push_back(parse_result_json(text.str()));
  }
  emit_report(dir, title, aggregate(results));
}

}  // namespace swce::experiment
