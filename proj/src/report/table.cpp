#include "mmrt/report/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "mmrt/attack/settings.hpp"
#include "mmrt/errors.hpp"

namespace mmrt::report {

namespace {

std::vector<std::string> category_columns() {
  std::vector<std::string> cols;
  for (corpus::Category c : corpus::all_categories()) cols.emplace_back(corpus::to_string(c));
  return cols;
}

struct RowKey {
  std::string model, setting, defense;
  bool operator<(const RowKey& o) const {
    if (model != o.model) return model < o.model;
    if (setting != o.setting) return setting < o.setting;
    return defense < o.defense;
  }
  bool operator==(const RowKey& o) const = default;
};

// Presentation order: models by first appearance, settings in campaign order,
// undefended before defended.
int setting_rank(const std::string& s) {
  const auto parsed = attack::setting_from_string(s);
  return parsed ? static_cast<int>(*parsed) : 1000;
}

}  // namespace

std::string format_pct(double v) {
  const double rounded = std::copysign(std::floor(std::abs(v) * 100.0 + 0.5) / 100.0, v);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", rounded);
  return buf;
}

std::string format_delta(double v) {
  const double rounded = std::floor(std::abs(v) * 100.0 + 0.5) / 100.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c%.2f", v < 0 ? '-' : '+', rounded);
  return buf;
}

ReportTable build_asr_table(const std::vector<corpus::AttemptRecord>& records,
                            const std::string& baseline) {
  ReportTable table;
  table.title = "ASR (%)";
  table.columns = category_columns();

  // Per (row, case): success = any harmful verdict among the case's records.
  std::map<RowKey, std::map<std::string, std::pair<std::string, bool>>> cases;
  std::vector<std::string> model_order;
  for (const auto& r : records) {
    const RowKey key{r.model, r.setting, r.defense};
    auto& entry = cases[key][r.case_id];
    entry.first = r.category;
    entry.second = entry.second || r.verdict;
    if (std::find(model_order.begin(), model_order.end(), r.model) == model_order.end()) {
      model_order.push_back(r.model);
    }
  }

  std::vector<RowKey> keys;
  for (const auto& [key, _] : cases) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [&](const RowKey& a, const RowKey& b) {
    const auto ma = std::find(model_order.begin(), model_order.end(), a.model);
    const auto mb = std::find(model_order.begin(), model_order.end(), b.model);
    if (ma != mb) return ma < mb;
    if (setting_rank(a.setting) != setting_rank(b.setting)) {
      return setting_rank(a.setting) < setting_rank(b.setting);
    }
    return a.defense < b.defense;  // "" (undefended) sorts first
  });

  for (const auto& key : keys) {
    TableRow row;
    row.model = key.model;
    row.setting = key.setting;
    row.defense = key.defense;
    std::map<std::string, std::pair<long, long>> per_cat;  // successes, total
    for (const auto& [_, entry] : cases[key]) {
      auto& g = per_cat[entry.first];
      g.second += 1;
      if (entry.second) g.first += 1;
    }
    double sum = 0.0;
    int n = 0;
    for (const auto& col : table.columns) {
      const auto it = per_cat.find(col);
      if (it == per_cat.end()) continue;
      const double pct = 100.0 * static_cast<double>(it->second.first) /
                         static_cast<double>(it->second.second);
      row.cells[col] = pct;
      sum += pct;
      ++n;
    }
    if (n > 0) row.average = sum / n;
    table.rows.push_back(std::move(row));
  }

  if (!baseline.empty()) {
    auto find_row = [&](const RowKey& want) -> const TableRow* {
      for (const auto& r : table.rows) {
        if (RowKey{r.model, r.setting, r.defense} == want) return &r;
      }
      return nullptr;
    };
    for (auto& row : table.rows) {
      RowKey want;
      if (baseline == "no-defense") {
        if (row.defense.empty()) continue;  // the baseline itself
        want = {row.model, row.setting, ""};
      } else {
        if (row.setting == baseline) continue;
        want = {row.model, baseline, row.defense};
      }
      const TableRow* base = find_row(want);
      if (!base || !base->average || !row.average) {
        table.notices.push_back("baseline row absent for " + row.model + "/" + row.setting +
                                (row.defense.empty() ? "" : "/" + row.defense) +
                                "; delta omitted");
        continue;
      }
      row.delta = *row.average - *base->average;
    }
  }
  return table;
}

namespace {

ReportTable build_detection_table(const std::vector<defense::DetectionRecord>& records,
                                  bool benign) {
  ReportTable table;
  table.title = benign ? "FRR (%)" : "Recall (%)";
  if (benign) {
    table.columns = {"FRR"};
  } else {
    table.columns = category_columns();
  }

  std::map<RowKey, std::map<std::string, std::pair<long, long>>> groups;  // col -> flagged,total
  std::vector<std::string> model_order;
  int skipped = 0;
  for (const auto& r : records) {
    if ((r.category.empty()) != benign) continue;
    if (!r.error.empty()) {
      ++skipped;
      continue;
    }
    // Rows split by threshold, so a stock and a calibrated run sit side by side.
    char theta[40];
    std::snprintf(theta, sizeof(theta), "jailguard@%.6g", r.theta);
    const RowKey key{r.model, r.setting, theta};
    const std::string col = benign ? "FRR" : r.category;
    auto& g = groups[key][col];
    g.second += 1;
    if (r.flagged) g.first += 1;
    if (std::find(model_order.begin(), model_order.end(), r.model) == model_order.end()) {
      model_order.push_back(r.model);
    }
  }
  if (skipped > 0) {
    table.notices.push_back(std::to_string(skipped) + " infeasible detection(s) excluded");
  }

  std::vector<RowKey> keys;
  for (const auto& [key, _] : groups) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [&](const RowKey& a, const RowKey& b) {
    const auto ma = std::find(model_order.begin(), model_order.end(), a.model);
    const auto mb = std::find(model_order.begin(), model_order.end(), b.model);
    if (ma != mb) return ma < mb;
    if (setting_rank(a.setting) != setting_rank(b.setting)) {
      return setting_rank(a.setting) < setting_rank(b.setting);
    }
    return a.defense < b.defense;
  });

  for (const auto& key : keys) {
    TableRow row;
    row.model = key.model;
    row.setting = key.setting;
    row.defense = key.defense;
    double sum = 0.0;
    int n = 0;
    for (const auto& col : table.columns) {
      const auto it = groups[key].find(col);
      if (it == groups[key].end()) continue;
      const double pct = 100.0 * static_cast<double>(it->second.first) /
                         static_cast<double>(it->second.second);
      row.cells[col] = pct;
      sum += pct;
      ++n;
    }
    if (n > 0) row.average = sum / n;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

ReportTable build_recall_table(const std::vector<defense::DetectionRecord>& records) {
  return build_detection_table(records, false);
}

ReportTable build_frr_table(const std::vector<defense::DetectionRecord>& records) {
  return build_detection_table(records, true);
}

std::string render_text(const ReportTable& table) {
  std::vector<std::string> headers = {"Model", "Setting", "Defense"};
  for (const auto& c : table.columns) headers.push_back(c);
  const bool single_column = table.columns.size() == 1;
  if (!single_column) headers.push_back("Average");

  std::vector<std::vector<std::string>> grid;
  grid.push_back(headers);
  for (const auto& row : table.rows) {
    std::vector<std::string> cells = {row.model, row.setting,
                                      row.defense.empty() ? "-" : row.defense};
    for (const auto& col : table.columns) {
      const auto it = row.cells.find(col);
      cells.push_back(it == row.cells.end() ? "-" : format_pct(it->second));
    }
    if (!single_column) {
      std::string avg = row.average ? format_pct(*row.average) : "-";
      if (row.delta) avg += " (" + format_delta(*row.delta) + ")";
      cells.push_back(avg);
    } else if (row.delta) {
      cells.back() += " (" + format_delta(*row.delta) + ")";
    }
    grid.push_back(std::move(cells));
  }

  std::vector<std::size_t> widths(headers.size(), 0);
  for (const auto& r : grid) {
    for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
  }

  std::ostringstream out;
  if (!table.title.empty()) out << table.title << "\n";
  for (const auto& r : grid) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << "  ";
      out << r[i];
      if (i + 1 < r.size()) out << std::string(widths[i] - r[i].size(), ' ');
    }
    out << "\n";
  }
  for (const auto& n : table.notices) out << "note: " << n << "\n";
  return out.str();
}

std::string render_csv(const ReportTable& table) {
  std::ostringstream out;
  out << "model,setting,defense";
  for (const auto& c : table.columns) out << "," << c;
  out << ",Average,Delta\n";
  for (const auto& row : table.rows) {
    out << row.model << "," << row.setting << "," << row.defense;
    for (const auto& col : table.columns) {
      const auto it = row.cells.find(col);
      out << "," << (it == row.cells.end() ? "" : format_pct(it->second));
    }
    out << "," << (row.average ? format_pct(*row.average) : "");
    out << "," << (row.delta ? format_delta(*row.delta) : "");
    out << "\n";
  }
  return out.str();
}

}  // namespace mmrt::report
