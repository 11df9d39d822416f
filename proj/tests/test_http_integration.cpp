#include <doctest.h>

#ifdef MMRT_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <json.hpp>

#include <atomic>
#include <thread>

#include "mmrt/clients/model_client.hpp"
#include "mmrt/errors.hpp"
#include "support/fixtures.hpp"

using namespace mmrt;
using namespace mmrt::clients;
using nlohmann::json;

namespace {

// Local chat-completions endpoint; echoes back the number of attached images
// so the test can verify attachment encoding end to end.
struct LoopbackServer {
  httplib::Server server;
  int port = 0;
  std::thread thread;
  std::atomic<int> hits{0};

  LoopbackServer() {
    server.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      hits += 1;
      const auto body = json::parse(req.body);
      int images = 0;
      std::string text;
      for (const auto& part : body["messages"][0]["content"]) {
        if (part["type"] == "image_url") {
          ++images;
          const std::string url = part["image_url"]["url"];
          if (url.rfind("data:image/png;base64,", 0) != 0) {
            res.status = 400;
            return;
          }
        }
        if (part["type"] == "text") text = part["text"];
      }
      const json reply{{"choices",
                        {{{"message",
                           {{"role", "assistant"},
                            {"content", "echo images=" + std::to_string(images)}}}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }

  ~LoopbackServer() {
    server.stop();
    thread.join();
  }
};

}  // namespace

TEST_CASE("http client completes against a live loopback endpoint") {
  LoopbackServer loopback;

  EndpointConfig cfg;
  cfg.base_url = "http://127.0.0.1:" + std::to_string(loopback.port);
  cfg.model_name = "loopback";
  cfg.max_images = 2;
  cfg.timeout_ms = 5000;
  cfg.retry_base_ms = 1;
  HttpModelClient client(cfg);

  ChatRequest req;
  req.text = {"hello over the wire", promptkit::Provenance::opt};
  req.images = {testsupport::random_image(16, 16, 1), testsupport::random_image(16, 16, 2)};
  CHECK(client.complete(req) == "echo images=2");
  CHECK(loopback.hits.load() == 1);
}

TEST_CASE("auth and server errors map to typed failures") {
  LoopbackServer loopback;
  loopback.server.Post("/denied", [](const httplib::Request&, httplib::Response&) {});

  EndpointConfig cfg;
  cfg.base_url = "http://127.0.0.1:" + std::to_string(loopback.port);
  cfg.model_name = "loopback";
  cfg.api_key_env = "MMRT_TEST_KEY_THAT_IS_NOT_SET";
  HttpModelClient client(cfg);
  ChatRequest req;
  req.text = {"x", promptkit::Provenance::opt};
  CHECK_THROWS_AS(client.complete(req), AuthError);
}
