#include "mmrt/clients/model_client.hpp"

#include <chrono>
#include <cstdlib>
#include <mutex>
#include <semaphore>
#include <thread>

#include <json.hpp>

#include "mmrt/errors.hpp"
#include "mmrt/imageops/png_io.hpp"
#include "mmrt/util/base64.hpp"
#include "mmrt/util/rng.hpp"

namespace mmrt::clients {

namespace {

using nlohmann::json;

constexpr const char* kChatPath = "/v1/chat/completions";

bool retryable_status(int status) { return status == 429 || (status >= 500 && status < 600); }

std::string extract_content(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw TransportError("completion response is not JSON");
  if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty()) {
    throw TransportError("completion response has no choices");
  }
  const json& msg = j["choices"][0].value("message", json::object());
  if (msg.contains("content") && msg["content"].is_string()) {
    return msg["content"].get<std::string>();
  }
  // Some gateways return content as a part list.
  if (msg.contains("content") && msg["content"].is_array()) {
    std::string out;
    for (const auto& part : msg["content"]) {
      if (part.is_object() && part.value("type", "") == "text") {
        out += part.value("text", std::string());
      }
    }
    return out;
  }
  if (msg.contains("content") && msg["content"].is_null()) return "";
  throw TransportError("completion response has no content");
}

void validate_shape(const EndpointConfig& cfg, const ChatRequest& req) {
  if (static_cast<int>(req.images.size()) > cfg.max_images) {
    throw CapabilityError("request carries " + std::to_string(req.images.size()) +
                          " images but endpoint accepts " + std::to_string(cfg.max_images));
  }
  const int placeholders = count_image_placeholders(req.text.text);
  if (placeholders > 0 && placeholders != static_cast<int>(req.images.size())) {
    throw CapabilityError("text declares " + std::to_string(placeholders) +
                          " image placeholders but request carries " +
                          std::to_string(req.images.size()));
  }
}

}  // namespace

int count_image_placeholders(const std::string& text) {
  int n = 0;
  std::size_t pos = 0;
  while ((pos = text.find("<image>", pos)) != std::string::npos) {
    ++n;
    pos += 7;
  }
  return n;
}

struct HttpModelClient::Impl {
  EndpointConfig cfg;
  std::shared_ptr<Transport> transport;
  std::counting_semaphore<4096> in_flight;
  std::mutex jitter_mutex;
  Rng jitter;

  Impl(EndpointConfig c, std::shared_ptr<Transport> t)
      : cfg(std::move(c)),
        transport(std::move(t)),
        in_flight(cfg.max_in_flight),
        jitter(Seed{static_cast<std::uint64_t>(
            std::chrono::steady_clock::now().time_since_epoch().count())}) {}

  double next_jitter() {
    std::lock_guard lock(jitter_mutex);
    return jitter.uniform(0.75, 1.25);
  }
};

HttpModelClient::HttpModelClient(EndpointConfig cfg, std::shared_ptr<Transport> transport) {
  if (!transport) transport = make_http_transport(cfg.base_url, cfg.timeout_ms);
  impl_ = std::make_unique<Impl>(std::move(cfg), std::move(transport));
}

HttpModelClient::~HttpModelClient() = default;

int HttpModelClient::max_images() const { return impl_->cfg.max_images; }

std::string HttpModelClient::label() const { return impl_->cfg.model_name; }

std::string HttpModelClient::build_request_body(const EndpointConfig& cfg,
                                                const ChatRequest& req) {
  json content = json::array();
  content.push_back({{"type", "text"}, {"text", req.text.text}});
  for (const auto& img : req.images) {
    const std::string data_url = "data:image/png;base64," + base64_encode(imageops::encode_png(img));
    content.push_back({{"type", "image_url"}, {"image_url", {{"url", data_url}}}});
  }
  json body{{"model", cfg.model_name},
            {"temperature", req.temperature},
            {"max_tokens", req.max_tokens},
            {"messages", json::array({{{"role", "user"}, {"content", content}}})}};
  return body.dump();
}

std::string HttpModelClient::complete(const ChatRequest& req) {
  const EndpointConfig& cfg = impl_->cfg;
  validate_shape(cfg, req);

  Transport::Headers headers;
  if (!cfg.api_key_env.empty()) {
    const char* key = std::getenv(cfg.api_key_env.c_str());
    if (!key || !*key) throw AuthError("environment variable not set: " + cfg.api_key_env);
    headers.emplace_back("Authorization", std::string("Bearer ") + key);
  }
  const std::string body = build_request_body(cfg, req);

  impl_->in_flight.acquire();
  struct Release {
    std::counting_semaphore<4096>& sem;
    ~Release() { sem.release(); }
  } release{impl_->in_flight};

  std::string last_error;
  const int attempts_max = 1 + std::max(0, cfg.max_retries);
  for (int attempt = 1; attempt <= attempts_max; ++attempt) {
    if (attempt > 1) {
      const double backoff =
          cfg.retry_base_ms * static_cast<double>(1 << (attempt - 2)) * impl_->next_jitter();
      std::this_thread::sleep_for(std::chrono::milliseconds(static_cast<long>(backoff)));
    }
    Transport::Response res;
    try {
      res = impl_->transport->post_json(kChatPath, headers, body);
    } catch (const TransportError& e) {
      last_error = e.what();
      continue;
    }
    if (res.status == 401 || res.status == 403) {
      throw AuthError("endpoint rejected credentials (HTTP " + std::to_string(res.status) + ")");
    }
    if (res.status == 200) return extract_content(res.body);
    if (!retryable_status(res.status)) {
      throw TransportError("endpoint returned HTTP " + std::to_string(res.status));
    }
    last_error = "HTTP " + std::to_string(res.status);
  }
  throw TransportError("retries exhausted (" + std::to_string(attempts_max) +
                       " attempts): " + last_error);
}

}  // namespace mmrt::clients
