#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

#include <json.hpp>

#include "mmrt/clients/transport.hpp"
#include "mmrt/errors.hpp"

namespace mmrt::testsupport {

// In-memory transport with concurrency instrumentation. The reply function
// maps the prompt text extracted from the request body to the model's answer.
class FakeTransport : public clients::Transport {
 public:
  using ReplyFn = std::function<std::string(const std::string& prompt_text)>;

  explicit FakeTransport(ReplyFn reply, int busy_ms = 0)
      : reply_(std::move(reply)), busy_ms_(busy_ms) {}

  // Fails the first `n` calls with a connect error.
  void fail_first(int n) { remaining_failures_ = n; }

  Response post_json(const std::string&, const Headers&, const std::string& body) override {
    const int now = ++in_flight_;
    int seen = max_in_flight_.load();
    while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
    }
    calls_ += 1;
    if (busy_ms_ > 0) std::this_thread::sleep_for(std::chrono::milliseconds(busy_ms_));

    struct Depart {
      std::atomic<int>& counter;
      ~Depart() { --counter; }
    } depart{in_flight_};

    int expected = remaining_failures_.load();
    while (expected > 0 && !remaining_failures_.compare_exchange_weak(expected, expected - 1)) {
    }
    if (expected > 0) throw TransportError("injected connect failure");

    const auto req = nlohmann::json::parse(body);
    std::string prompt;
    for (const auto& part : req["messages"][0]["content"]) {
      if (part.value("type", "") == "text") prompt += part.value("text", "");
    }
    {
      std::lock_guard lock(mutex_);
      last_prompt_ = prompt;
    }
    const nlohmann::json reply{
        {"choices",
         {{{"message", {{"role", "assistant"}, {"content", reply_(prompt)}}}}}}};
    return Response{200, reply.dump()};
  }

  int calls() const { return calls_.load(); }
  int max_in_flight() const { return max_in_flight_.load(); }
  std::string last_prompt() const {
    std::lock_guard lock(mutex_);
    return last_prompt_;
  }

 private:
  ReplyFn reply_;
  int busy_ms_;
  std::atomic<int> remaining_failures_{0};
  std::atomic<int> calls_{0};
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
  mutable std::mutex mutex_;
  std::string last_prompt_;
};

}  // namespace mmrt::testsupport
