#include "mmrt/corpus/record_store.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mmrt/errors.hpp"

namespace mmrt::corpus {

namespace {
using nlohmann::json;
}

std::string record_to_json_line(const AttemptRecord& r) {
  json j{{"case_id", r.case_id},
         {"category", r.category},
         {"model", r.model},
         {"setting", r.setting},
         {"defense", r.defense},
         {"phase", to_string(r.phase)},
         {"prompt_text_hash", r.prompt_text_hash},
         {"image_hashes", r.image_hashes},
         {"response_text", r.response_text},
         {"verdict", r.verdict},
         {"latency_ms", r.latency_ms},
         {"timestamp", r.timestamp},
         {"error", r.error},
         {"iteration_mode", r.iteration_mode}};
  return j.dump();
}

AttemptRecord record_from_json_line(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw IoFailure("store line is not a JSON object");
  AttemptRecord r;
  r.case_id = j.value("case_id", std::string());
  r.category = j.value("category", std::string());
  r.model = j.value("model", std::string());
  r.setting = j.value("setting", std::string());
  r.defense = j.value("defense", std::string());
  const auto phase = phase_from_string(j.value("phase", std::string("initial")));
  if (!phase) throw IoFailure("store record has unknown phase");
  r.phase = *phase;
  r.prompt_text_hash = j.value("prompt_text_hash", std::string());
  if (j.contains("image_hashes")) r.image_hashes = j["image_hashes"].get<std::vector<std::string>>();
  r.response_text = j.value("response_text", std::string());
  r.verdict = j.value("verdict", false);
  r.latency_ms = j.value("latency_ms", std::int64_t{0});
  r.timestamp = j.value("timestamp", std::string());
  r.error = j.value("error", std::string());
  r.iteration_mode = j.value("iteration_mode", std::string());
  return r;
}

std::size_t append_records(const std::string& store_path,
                           const std::vector<AttemptRecord>& records) {
  if (records.empty()) return 0;
  std::string batch;
  for (const auto& r : records) {
    batch += record_to_json_line(r);
    batch += '\n';
  }
  std::ofstream out(store_path, std::ios::app | std::ios::binary);
  if (!out) throw IoFailure("cannot open store for append: " + store_path);
  out.write(batch.data(), static_cast<std::streamsize>(batch.size()));
  out.flush();
  if (!out) throw IoFailure("write failed: " + store_path);
  return records.size();
}

std::vector<AttemptRecord> read_records(const std::string& store_path) {
  std::ifstream in(store_path, std::ios::binary);
  if (!in) throw IoFailure("cannot open store: " + store_path);
  std::vector<AttemptRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(record_from_json_line(line));
  }
  return records;
}

std::vector<AttemptRecord> read_records_if_exists(const std::string& store_path) {
  if (!std::filesystem::exists(store_path)) return {};
  return read_records(store_path);
}

std::vector<AttemptRecord> read_records_lenient(const std::string& store_path,
                                                std::vector<std::string>& problems) {
  std::ifstream in(store_path, std::ios::binary);
  if (!in) {
    problems.push_back("cannot open store: " + store_path);
    return {};
  }
  std::vector<AttemptRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      records.push_back(record_from_json_line(line));
    } catch (const IoFailure& e) {
      problems.push_back(store_path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace mmrt::corpus
