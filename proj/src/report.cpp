#include "coreq/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

namespace coreq {

std::string format_mean(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

namespace {

std::string format_delta(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

// Feature lists contain commas.
std::string quoted(std::string_view s) {
  if (s.find(',') == std::string_view::npos) return std::string(s);
  return "\"" + std::string(s) + "\"";
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (char ch : line) {
    if (ch == '"') {
      in_quotes = !in_quotes;
    } else if (ch == ',' && !in_quotes) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (in_quotes) throw Error("unterminated quote in CSV row: " + line);
  fields.push_back(cur);
  return fields;
}

void write_stats(std::ostream& os, const PhaseStats& s) {
  os << s.count << ',' << s.solved << ',' << format_mean(s.mean_T) << ',' << format_mean(s.mean_T_solved) << ','
     << format_mean(s.mean_p);
}

}  // namespace

void write_runs_csv(std::ostream& os, std::span<const ProblemRun> runs, const RunContext& ctx, bool header) {
  if (header) os << kRunsHeader << '\n';
  for (const auto& r : runs) {
    os << r.index << ',' << outcome_name(r.stats.outcome) << ',' << r.stats.p << ',' << r.stats.T << ',';
    if (ctx.timing) os << format_mean(r.wall_ms);
    os << ',' << ctx.strategy << ',' << quoted(ctx.features) << ',' << ctx.seed << '\n';
  }
}

void write_epochs_csv(std::ostream& os, std::string_view fold, std::span<const EpochStats> epochs, bool header) {
  if (header) os << kEpochsHeader << '\n';
  for (const auto& e : epochs) {
    os << fold << ',' << e.epoch << ',';
    write_stats(os, e.stats);
    os << ',' << format_delta(e.max_weight_delta) << ',' << format_mean(e.epsilon) << '\n';
  }
}

void write_folds_csv(std::ostream& os, const CvReport& report, std::string_view features) {
  os << kFoldsHeader << '\n';
  const std::string feats = quoted(features);
  auto row = [&](const std::string& fold, std::string_view phase, std::string_view strategy, const PhaseStats& s) {
    os << fold << ',' << phase << ',' << strategy << ',' << (strategy == "baseline" ? "" : feats) << ',';
    write_stats(os, s);
    os << '\n';
  };
  bool baseline = false;
  for (const auto& f : report.folds) {
    const std::string id = std::to_string(f.fold);
    if (!f.training.epochs.empty()) row(id, "train", "q", f.training.epochs.back().stats);
    row(id, "validation", "q", f.validation_stats);
    if (!f.baseline_runs.empty()) {
      row(id, "validation", "baseline", f.baseline_stats);
      baseline = true;
    }
  }
  row("all", "train", "q", report.train);
  row("all", "validation", "q", report.validation);
  if (baseline) row("all", "validation", "baseline", report.baseline);
}

std::vector<std::vector<std::string>> read_csv(std::istream& is, std::string_view header) {
  std::string line;
  if (!std::getline(is, line)) throw Error("empty CSV input");
  if (line != header) throw Error("unexpected CSV header '" + line + "'");
  const std::size_t width = split_row(line).size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    auto fields = split_row(line);
    if (fields.size() != width) {
      throw Error("CSV row has " + std::to_string(fields.size()) + " fields, expected " + std::to_string(width));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace coreq
