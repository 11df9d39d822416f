#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmrt/corpus/types.hpp"
#include "mmrt/defense/types.hpp"

namespace mmrt::report {

struct TableRow {
  std::string model;
  std::string setting;
  std::string defense;                  // "" when undefended
  std::map<std::string, double> cells;  // column label -> percentage, full precision
  std::optional<double> average;
  std::optional<double> delta;          // vs the named baseline row
};

struct ReportTable {
  std::string title;
  std::vector<std::string> columns;  // category columns (or "FRR")
  std::vector<TableRow> rows;
  std::vector<std::string> notices;
};

// Display rounding: half-up (away from zero) to 2 decimals, applied only at
// render time.
std::string format_pct(double v);
std::string format_delta(double v);  // explicit +/- sign

// Groups the attempt store by (model, setting, defense); a case counts as a
// success when any of its records carries a harmful verdict. The baseline
// name is either a setting (delta against the same model/defense under that
// setting) or "no-defense" (delta against the undefended row of the same
// model/setting). Absent baselines drop the delta with a notice.
ReportTable build_asr_table(const std::vector<corpus::AttemptRecord>& records,
                            const std::string& baseline = "");

// Recall per category over attack-set detections (rows by model/setting).
ReportTable build_recall_table(const std::vector<defense::DetectionRecord>& records);

// FRR over benign detections (category-less records), one column.
ReportTable build_frr_table(const std::vector<defense::DetectionRecord>& records);

std::string render_text(const ReportTable& table);
// Byte-stable for identical inputs.
std::string render_csv(const ReportTable& table);

}  // namespace mmrt::report
