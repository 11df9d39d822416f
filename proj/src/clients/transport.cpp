#include "mmrt/clients/transport.hpp"

#ifdef MMRT_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "mmrt/errors.hpp"

namespace mmrt::clients {

namespace {

class HttplibTransport : public Transport {
 public:
  HttplibTransport(std::string base_url, int timeout_ms)
      : base_url_(std::move(base_url)), timeout_ms_(timeout_ms) {}

  Response post_json(const std::string& path, const Headers& headers,
                     const std::string& body) override {
    // httplib clients are not safe for concurrent requests; one per call
    // keeps the transport shareable, which is what the callers assume.
    httplib::Client client(base_url_);
    client.set_connection_timeout(0, timeout_ms_ * 1000LL);
    client.set_read_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);
    client.set_write_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);
#ifdef MMRT_HAVE_OPENSSL
    client.enable_server_certificate_verification(true);
#endif

    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    auto res = client.Post(path, h, body, "application/json");
    if (!res) {
      throw TransportError("no response from " + base_url_ + path + ": " +
                           httplib::to_string(res.error()));
    }
    return Response{res->status, res->body};
  }

 private:
  std::string base_url_;
  int timeout_ms_;
};

}  // namespace

std::shared_ptr<Transport> make_http_transport(const std::string& base_url, int timeout_ms) {
  return std::make_shared<HttplibTransport>(base_url, timeout_ms);
}

}  // namespace mmrt::clients
