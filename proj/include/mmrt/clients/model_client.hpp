#pragma once

#include <memory>
#include <string>

#include "mmrt/clients/transport.hpp"
#include "mmrt/clients/types.hpp"

namespace mmrt::clients {

// A target MLLM (or text-only defender). Implementations are shareable
// across concurrent callers.
class ModelClient {
 public:
  virtual ~ModelClient() = default;

  // Sends one chat turn and returns the model's text. Throws CapabilityError
  // when the request shape exceeds the endpoint, AuthError on rejected
  // credentials, TransportError once retries are exhausted.
  virtual std::string complete(const ChatRequest& req) = 0;

  virtual int max_images() const = 0;
  virtual std::string label() const = 0;
};

// OpenAI-compatible chat-completion client. Images travel as base64 PNG data
// URLs; the prompt text is sent byte-for-byte as produced by the builders.
// Transient failures (connect errors, 429, 5xx) retry with jittered
// exponential backoff; at most max_in_flight requests are outstanding at any
// instant.
class HttpModelClient : public ModelClient {
 public:
  // The default transport talks to cfg.base_url; tests inject fakes.
  explicit HttpModelClient(EndpointConfig cfg, std::shared_ptr<Transport> transport = nullptr);
  ~HttpModelClient() override;

  std::string complete(const ChatRequest& req) override;
  int max_images() const override;
  std::string label() const override;

  // Request body builder, exposed so tests can pin the wire format.
  static std::string build_request_body(const EndpointConfig& cfg, const ChatRequest& req);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mmrt::clients
