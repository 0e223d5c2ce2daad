#include "abi/harness/serve.hpp"

#include <string>

#include "abi/harness/playground.hpp"

namespace abi::harness {

namespace {

class PlaygroundConnection : public net::LineHandler {
 public:
  PlaygroundConnection(std::shared_ptr<net::LineSink> sink, std::optional<Technique> technique)
      : sink_(std::move(sink)) {
    if (technique) {
      session_.handle(std::string(R"({"type":"configure","technique":")") + to_string(*technique) + "\"}");
    }
  }

  void on_line(std::string_view line) override {
    for (const auto& reply : session_.handle(line)) sink_->send(reply);
  }

 private:
  std::shared_ptr<net::LineSink> sink_;
  PlaygroundSession session_;
};

}  // namespace

std::unique_ptr<net::LineServer> make_playground_server(std::uint16_t port, std::optional<Technique> technique) {
  return std::make_unique<net::LineServer>(port, [technique](std::shared_ptr<net::LineSink> sink) {
    return std::make_unique<PlaygroundConnection>(std::move(sink), technique);
  });
}

}  // namespace abi::harness
