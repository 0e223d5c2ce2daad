#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "abi/infospace/hub.hpp"
#include "abi/net/line_server.hpp"

namespace abi::infospace {

/// Runs a DropHub behind a line server and broadcasts snapshots at the
/// sync rate from a ticker thread.
class DropServer {
 public:
  DropServer(std::uint16_t port, SpaceConfig config, std::vector<FeedItem> feed, std::uint64_t seed);
  ~DropServer();

  std::uint16_t port() const { return server_.port(); }
  /// Blocks until stop().
  void run();
  void stop();

 private:
  void deliver(const std::vector<Outgoing>& out);

  std::mutex mu_;
  DropHub hub_;
  std::map<ClientId, std::shared_ptr<net::LineSink>> sinks_;
  net::LineServer server_;
  std::atomic<bool> stopping_{false};
  std::thread ticker_;
};

}  // namespace abi::infospace
