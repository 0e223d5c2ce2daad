#include "abi/infospace/server.hpp"

#include <chrono>

namespace abi::infospace {

namespace {

class Connection : public net::LineHandler {
 public:
  Connection(std::function<void(std::string_view)> on_line, std::function<void()> on_close)
      : on_line_(std::move(on_line)), on_close_(std::move(on_close)) {}
  void on_line(std::string_view line) override { on_line_(line); }
  void on_close() override { on_close_(); }

 private:
  std::function<void(std::string_view)> on_line_;
  std::function<void()> on_close_;
};

}  // namespace

DropServer::DropServer(std::uint16_t port, SpaceConfig config, std::vector<FeedItem> feed, std::uint64_t seed)
    : hub_(config, std::move(feed), seed),
      server_(port, [this](std::shared_ptr<net::LineSink> sink) -> std::unique_ptr<net::LineHandler> {
        ClientId id;
        {
          std::lock_guard lock(mu_);
          id = hub_.attach();
          sinks_[id] = sink;
        }
        return std::make_unique<Connection>(
            [this, id](std::string_view line) {
              std::lock_guard lock(mu_);
              deliver(hub_.handle(id, line));
            },
            [this, id] {
              std::lock_guard lock(mu_);
              hub_.detach(id);
              sinks_.erase(id);
            });
      }) {}

DropServer::~DropServer() {
  stop();
  if (ticker_.joinable()) ticker_.join();
}

void DropServer::deliver(const std::vector<Outgoing>& out) {
  for (const auto& o : out) {
    const auto it = sinks_.find(o.to);
    if (it != sinks_.end()) it->second->send(o.line);
  }
}

void DropServer::run() {
  ticker_ = std::thread([this] {
    using clock = std::chrono::steady_clock;
    const auto period = std::chrono::duration<double>(1.0 / kSyncRate);
    auto next = clock::now();
    while (!stopping_) {
      next += std::chrono::duration_cast<clock::duration>(period);
      std::this_thread::sleep_until(next);
      std::lock_guard lock(mu_);
      deliver(hub_.advance(1.0 / kSyncRate));
    }
  });
  server_.run();
}

void DropServer::stop() {
  stopping_ = true;
  server_.stop();
}

}  // namespace abi::infospace
