#pragma once

// In-process chat-completions mock for harness tests.

#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <thread>

#include <json.hpp>

#include "dagbench/http_support.hpp"

namespace dagbench::testing {

class MockEndpoint {
 public:
  using Responder = std::function<std::string(const std::string& prompt)>;

  explicit MockEndpoint(Responder responder) : responder_(std::move(responder)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                httplib::Response& res) {
      ++requests_;
      const nlohmann::json body = nlohmann::json::parse(req.body);
      const std::string prompt = body.at("messages").back().at("content").get<std::string>();
      nlohmann::json reply;
      reply["choices"] = nlohmann::json::array(
          {{{"message", {{"role", "assistant"}, {"content", responder_(prompt)}}}}});
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~MockEndpoint() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }
  int requests() const { return requests_.load(); }

 private:
  Responder responder_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<int> requests_{0};
};

}  // namespace dagbench::testing
