#include "mmrt/config.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mmrt/clients/scripted_model.hpp"
#include "mmrt/defense/adashield.hpp"
#include "mmrt/errors.hpp"

namespace mmrt {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return p;
  fs::path path(p);
  if (path.is_absolute()) return path.lexically_normal().string();
  return (base / path).lexically_normal().string();
}

void require_exists(const std::string& path, const std::string& what) {
  if (!path.empty() && !fs::exists(path)) {
    throw ConfigError(what + " does not exist: " + path);
  }
}

EndpointSpec parse_endpoint(const json& j, const fs::path& base) {
  EndpointSpec spec;
  spec.kind = j.value("kind", std::string("http"));
  if (spec.kind == "http") {
    auto& h = spec.http;
    h.base_url = j.value("base_url", std::string());
    if (h.base_url.empty()) throw ConfigError("http endpoint needs base_url");
    h.model_name = j.value("model_name", std::string());
    h.api_key_env = j.value("api_key_env", std::string());
    h.max_images = j.value("max_images", 1);
    h.timeout_ms = j.value("timeout_ms", 60000);
    h.max_retries = j.value("max_retries", 3);
    h.max_in_flight = j.value("max_in_flight", 4);
    h.retry_base_ms = j.value("retry_base_ms", 200);
    h.temperature = j.value("temperature", 0.0);
    h.max_tokens = j.value("max_tokens", 1024);
    spec.label = j.value("label", h.model_name);
  } else if (spec.kind == "scripted") {
    spec.rules_path = resolve(base, j.value("rules_path", std::string()));
    if (spec.rules_path.empty()) throw ConfigError("scripted endpoint needs rules_path");
    require_exists(spec.rules_path, "scripted rules file");
    spec.scripted_max_images = j.value("max_images", 2);
    spec.label = j.value("label", std::string("scripted"));
  } else {
    throw ConfigError("unknown endpoint kind: " + spec.kind);
  }
  return spec;
}

JudgeSpec parse_judge(const json& j, const fs::path& base) {
  JudgeSpec spec;
  spec.kind = j.value("kind", std::string("mock"));
  if (spec.kind == "mock") {
    if (j.contains("refusal_prefixes")) {
      spec.refusal_prefixes = j["refusal_prefixes"].get<std::vector<std::string>>();
    }
  } else if (spec.kind == "endpoint") {
    if (!j.contains("endpoint")) throw ConfigError("endpoint judge needs an endpoint block");
    spec.endpoint = parse_endpoint(j["endpoint"], base);
    if (j.contains("prompt_template")) spec.prompt_template = j["prompt_template"].get<std::string>();
  } else {
    throw ConfigError("unknown judge kind: " + spec.kind);
  }
  return spec;
}

DefenseSpec parse_defense(const json& j, const fs::path& base) {
  DefenseSpec spec;
  const std::string kind_str = j.value("kind", std::string());
  const auto kind = defense::defense_kind_from_string(kind_str);
  if (!kind) throw ConfigError("unknown defense kind: " + kind_str);
  spec.config.kind = *kind;

  const std::string ordering = j.value("ordering", std::string("defense_first"));
  if (ordering == "attack_first") {
    spec.config.ordering = promptkit::DefenseOrdering::attack_first;
  } else if (ordering == "defense_first") {
    spec.config.ordering = promptkit::DefenseOrdering::defense_first;
  } else {
    throw ConfigError("unknown defense ordering: " + ordering);
  }

  if (j.contains("static_prompt")) {
    spec.config.static_prompt = {j["static_prompt"].get<std::string>(), "static"};
  }
  spec.pool_path = resolve(base, j.value("pool_path", std::string()));
  if (spec.config.kind == defense::DefenseKind::adashield_a && !spec.pool_path.empty()) {
    require_exists(spec.pool_path, "defense pool");
    spec.config.pool = defense::load_pool(spec.pool_path);
  }

  if (j.contains("policy")) {
    const json& p = j["policy"];
    spec.config.policy.n_variants = p.value("n_variants", 8);
    if (p.contains("probs")) {
      const auto probs = p["probs"].get<std::vector<double>>();
      if (probs.size() != 3) throw ConfigError("policy probs must have 3 entries");
      spec.config.policy.probs = {probs[0], probs[1], probs[2]};
    }
    spec.config.policy.max_deg = p.value("max_deg", 30.0);
    spec.config.policy.sigma = p.value("sigma", 2.0);
    spec.config.policy.bits = p.value("bits", 2);
  }
  spec.config.threshold = j.value("threshold", 0.025);
  spec.allowance = j.value("allowance", 0.05);
  spec.max_rounds = j.value("max_rounds", 3);
  if (j.contains("defender_template")) {
    spec.defender_template = j["defender_template"].get<std::string>();
  }
  return spec;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("config is not a JSON object: " + path);

  const fs::path base = fs::path(path).parent_path();
  RunConfig cfg;
  cfg.attack_manifest = resolve(base, j.value("attack_manifest", std::string()));
  cfg.benign_manifest = resolve(base, j.value("benign_manifest", std::string()));
  require_exists(cfg.attack_manifest, "attack manifest");
  require_exists(cfg.benign_manifest, "benign manifest");
  cfg.store = resolve(base, j.value("store", std::string()));
  cfg.detection_store = resolve(base, j.value("detection_store", std::string()));

  if (!j.contains("model")) throw ConfigError("config needs a model endpoint");
  cfg.model = parse_endpoint(j["model"], base);
  if (j.contains("judge")) cfg.judge = parse_judge(j["judge"], base);
  if (j.contains("defender")) cfg.defender = parse_endpoint(j["defender"], base);

  const std::string setting = j.value("setting", std::string("opt_image"));
  const auto parsed = attack::setting_from_string(setting);
  if (!parsed) throw ConfigError("unknown setting: " + setting);
  cfg.setting = *parsed;

  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.parallelism = j.value("parallelism", 1);
  if (cfg.parallelism < 1) throw ConfigError("parallelism must be >= 1");
  cfg.all_iterations = j.value("all_iterations", false);

  if (j.contains("defense")) cfg.defense = parse_defense(j["defense"], base);
  return cfg;
}

std::shared_ptr<clients::ModelClient> make_model(const EndpointSpec& spec) {
  if (spec.kind == "scripted") {
    return clients::ScriptedModel::from_file(spec.rules_path, spec.scripted_max_images);
  }
  return std::make_shared<clients::HttpModelClient>(spec.http);
}

std::shared_ptr<clients::JudgeClient> make_judge(const JudgeSpec& spec) {
  if (spec.kind == "endpoint") {
    return std::make_shared<clients::EndpointJudge>(make_model(*spec.endpoint),
                                                    spec.prompt_template);
  }
  return std::make_shared<clients::MockJudge>(spec.refusal_prefixes);
}

}  // namespace mmrt
