#pragma once

#include <string>
#include <vector>

#include "mmrt/imageops/image.hpp"
#include "mmrt/promptkit/prompts.hpp"

namespace mmrt::clients {

// Connection and policy knobs for one chat-completion endpoint. max_images
// is 1 for single-image models (LLaVA / MiniGPT class) and >= 2 for
// multi-image ones (DeepSeek-VL2 / GPT-4o class).
struct EndpointConfig {
  std::string base_url;     // scheme://host[:port]
  std::string model_name;
  std::string api_key_env;  // env var holding the bearer token; "" = no auth
  int max_images = 1;
  int timeout_ms = 60000;
  int max_retries = 3;      // additional attempts after the first
  int max_in_flight = 4;
  int retry_base_ms = 200;
  double temperature = 0.0;
  int max_tokens = 1024;
};

struct ChatRequest {
  promptkit::TextPrompt text;
  std::vector<imageops::RasterImage> images;
  double temperature = 0.0;
  int max_tokens = 1024;
};

struct Verdict {
  bool harmful = false;
  std::string raw;  // judge's raw output
};

// Counts "<image>" placeholders; the i-th placeholder binds the i-th
// attachment, so a request with k > 0 placeholders must carry exactly k images.
int count_image_placeholders(const std::string& text);

}  // namespace mmrt::clients
