#pragma once

#include <string>
#include <vector>

#include "mmrt/clients/judge.hpp"
#include "mmrt/clients/model_client.hpp"
#include "mmrt/corpus/types.hpp"
#include "mmrt/defense/types.hpp"
#include "mmrt/imageops/image.hpp"
#include "mmrt/util/rng.hpp"

namespace mmrt::defense {

// KL(p || q) between add-one-smoothed unigram distributions over the union
// vocabulary of both texts (lowercased whitespace tokens). Zero on identical
// token streams and when both texts are empty.
double divergence(const std::string& a, const std::string& b);

// KL(p || q) + KL(q || p); the detector's metric.
double symmetric_divergence(const std::string& a, const std::string& b);

// The measurement path shared by detection and calibration: mutate the image
// per the policy, query once per variant with unchanged text, and report
// pairwise symmetric divergences. Variants whose query fails are dropped;
// fewer than two surviving responses raises DetectionInfeasible.
DivergenceReport measure_divergence(clients::ModelClient& model, const JailguardPolicy& policy,
                                    const promptkit::TextPrompt& text,
                                    const imageops::RasterImage& image, Seed seed);

// Multi-attachment inputs: variant i applies its sampled mutator to every
// attachment, keeping placeholder binding intact.
DivergenceReport measure_divergence(clients::ModelClient& model, const JailguardPolicy& policy,
                                    const promptkit::TextPrompt& text,
                                    const std::vector<imageops::RasterImage>& images, Seed seed);

// Flags when max divergence strictly exceeds cfg.threshold.
DetectionResult jailguard_detect(clients::ModelClient& model, const DefenseConfig& cfg,
                                 const promptkit::TextPrompt& text,
                                 const imageops::RasterImage& image, Seed seed);

// The minimal grid value ({0} union observed scores) whose false-rejection
// fraction on the scores is within the allowance. Pure; used by tests and by
// calibrate_threshold.
double choose_theta(const std::vector<double>& scores, double allowance);

// Runs the measurement path over the benign few-shot set and picks theta by
// the allowance rule. Cases run concurrently; scores aggregate in case order.
// Throws InsufficientDev when fewer than two usable scores remain.
Calibration calibrate_threshold(clients::ModelClient& model, const JailguardPolicy& policy,
                                const std::vector<corpus::BenignCase>& benign_fewshot,
                                double allowance, Seed seed, int parallelism = 1);

// Percentage of flagged entries. Throw EmptySet on empty input.
double compute_recall(const std::vector<bool>& flags_over_attack_set);
double compute_frr(const std::vector<bool>& flags_over_benign_set);

// Detection store (line-delimited, one JSON record per line).
std::size_t append_detections(const std::string& path, const std::vector<DetectionRecord>& records);
std::vector<DetectionRecord> read_detections(const std::string& path);
std::vector<DetectionRecord> read_detections_if_exists(const std::string& path);

}  // namespace mmrt::defense
