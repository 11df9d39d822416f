#pragma once

#include <memory>
#include <optional>
#include <string>

#include "mmrt/attack/settings.hpp"
#include "mmrt/clients/judge.hpp"
#include "mmrt/clients/model_client.hpp"
#include "mmrt/defense/adashield.hpp"
#include "mmrt/defense/types.hpp"

namespace mmrt {

// One chat endpoint, either a live HTTP gateway or a scripted offline model.
struct EndpointSpec {
  std::string kind = "http";  // "http" | "scripted"
  clients::EndpointConfig http;
  std::string rules_path;      // scripted
  int scripted_max_images = 2;
  std::string label;           // row label in reports; defaults per kind
};

struct JudgeSpec {
  std::string kind = "mock";  // "mock" | "endpoint"
  std::vector<std::string> refusal_prefixes = clients::MockJudge::default_refusals();
  std::optional<EndpointSpec> endpoint;
  std::string prompt_template = clients::EndpointJudge::default_template();
};

struct DefenseSpec {
  defense::DefenseConfig config;
  std::string pool_path;  // adashield_a inference pool
  double allowance = 0.05;
  int max_rounds = 3;
  std::string defender_template = defense::TrainOptions::default_defender_template();
};

// The campaign configuration file. Paths referenced by the chosen command
// must exist when the config loads.
struct RunConfig {
  std::string attack_manifest;
  std::string benign_manifest;
  std::string store;
  std::string detection_store;
  EndpointSpec model;
  JudgeSpec judge;
  std::optional<EndpointSpec> defender;
  attack::AttackSetting setting = attack::AttackSetting::opt_image;
  std::uint64_t seed = 0;
  int parallelism = 1;
  bool all_iterations = false;
  std::optional<DefenseSpec> defense;
};

// Throws ConfigError on parse or validation problems.
RunConfig load_run_config(const std::string& path);

std::shared_ptr<clients::ModelClient> make_model(const EndpointSpec& spec);
std::shared_ptr<clients::JudgeClient> make_judge(const JudgeSpec& spec);

}  // namespace mmrt
