#include "mmrt/clients/scripted_model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mmrt/errors.hpp"
#include "mmrt/util/hash.hpp"

namespace mmrt::clients {

namespace {

using nlohmann::json;

const std::vector<std::string> kKnownKeys = {
    "text_contains", "text_prefix",       "num_images", "image_hash_any_of",
    "min_call",      "append_image_hash", "respond"};

ScriptedRule parse_rule(const json& j, std::size_t index) {
  if (!j.is_object()) throw BadRules("rule " + std::to_string(index) + " is not an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const auto& k : kKnownKeys) known = known || k == key;
    if (!known) throw BadRules("rule " + std::to_string(index) + " has unknown key '" + key + "'");
  }
  ScriptedRule rule;
  if (j.contains("text_contains")) {
    if (j["text_contains"].is_string()) {
      rule.text_contains.push_back(j["text_contains"].get<std::string>());
    } else if (j["text_contains"].is_array()) {
      for (const auto& s : j["text_contains"]) rule.text_contains.push_back(s.get<std::string>());
    } else {
      throw BadRules("text_contains must be a string or array");
    }
  }
  if (j.contains("text_prefix")) rule.text_prefix = j["text_prefix"].get<std::string>();
  if (j.contains("num_images")) rule.num_images = j["num_images"].get<int>();
  if (j.contains("image_hash_any_of")) {
    for (const auto& s : j["image_hash_any_of"]) {
      rule.image_hash_any_of.push_back(s.get<std::string>());
    }
  }
  if (j.contains("min_call")) rule.min_call = j["min_call"].get<int>();
  if (!j.contains("respond") || !j["respond"].is_string()) {
    throw BadRules("rule " + std::to_string(index) + " lacks a 'respond' string");
  }
  rule.respond = j["respond"].get<std::string>();
  rule.append_image_hash = j.value("append_image_hash", false);
  return rule;
}

std::vector<ScriptedRule> parse_rules(const json& root) {
  const json* arr = nullptr;
  if (root.is_array()) {
    arr = &root;
  } else if (root.is_object() && root.contains("rules") && root["rules"].is_array()) {
    arr = &root["rules"];
  } else {
    throw BadRules("rules file must be a JSON array or an object with a 'rules' array");
  }
  if (arr->empty()) throw BadRules("rules list is empty");
  std::vector<ScriptedRule> rules;
  for (std::size_t i = 0; i < arr->size(); ++i) rules.push_back(parse_rule((*arr)[i], i));
  bool has_default = false;
  for (const auto& r : rules) has_default = has_default || r.is_default();
  if (!has_default) throw BadRules("rules must include a default (predicate-free) rule");
  return rules;
}

}  // namespace

ScriptedModel::ScriptedModel(std::vector<ScriptedRule> rules, int max_images)
    : rules_(std::move(rules)), max_images_(max_images) {
  bool has_default = false;
  for (const auto& r : rules_) has_default = has_default || r.is_default();
  if (!has_default) throw BadRules("rules must include a default (predicate-free) rule");
}

std::shared_ptr<ScriptedModel> ScriptedModel::from_json_text(const std::string& rules_json,
                                                             int max_images) {
  json root = json::parse(rules_json, nullptr, false);
  if (root.is_discarded()) throw BadRules("rules file is not valid JSON");
  return std::make_shared<ScriptedModel>(parse_rules(root), max_images);
}

std::shared_ptr<ScriptedModel> ScriptedModel::from_file(const std::string& rules_path,
                                                        int max_images) {
  std::ifstream in(rules_path);
  if (!in) throw BadRules("cannot open rules file: " + rules_path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str(), max_images);
}

std::string ScriptedModel::complete(const ChatRequest& req) {
  if (static_cast<int>(req.images.size()) > max_images_) {
    throw CapabilityError("request carries " + std::to_string(req.images.size()) +
                          " images but endpoint accepts " + std::to_string(max_images_));
  }
  const int placeholders = count_image_placeholders(req.text.text);
  if (placeholders > 0 && placeholders != static_cast<int>(req.images.size())) {
    throw CapabilityError("text declares " + std::to_string(placeholders) +
                          " image placeholders but request carries " +
                          std::to_string(req.images.size()));
  }

  std::vector<std::string> hashes;
  hashes.reserve(req.images.size());
  for (const auto& img : req.images) hashes.push_back(imageops::image_hash(img));

  std::string content_key = req.text.text;
  for (const auto& h : hashes) content_key += "|" + h;

  int call_index = 0;
  {
    std::lock_guard lock(mutex_);
    call_index = ++call_counts_[hash_hex(content_key)];
  }
  queries_.fetch_add(1);

  for (const auto& rule : rules_) {
    bool match = true;
    for (const auto& sub : rule.text_contains) {
      match = match && req.text.text.find(sub) != std::string::npos;
    }
    if (match && rule.text_prefix) {
      match = req.text.text.rfind(*rule.text_prefix, 0) == 0;
    }
    if (match && rule.num_images) {
      match = static_cast<int>(req.images.size()) == *rule.num_images;
    }
    if (match && !rule.image_hash_any_of.empty()) {
      bool any = false;
      for (const auto& h : hashes) {
        for (const auto& want : rule.image_hash_any_of) any = any || h == want;
      }
      match = any;
    }
    if (match && rule.min_call) {
      match = call_index >= *rule.min_call;
    }
    if (!match) continue;
    std::string out = rule.respond;
    if (rule.append_image_hash && !hashes.empty()) out += " " + hashes.front();
    return out;
  }
  // Unreachable: construction guarantees a default rule.
  throw BadRules("no rule matched and no default present");
}

}  // namespace mmrt::clients
