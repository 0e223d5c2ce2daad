#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace abi::net {

/// Write end of one connection. Safe to call from several threads.
class LineSink {
 public:
  explicit LineSink(int fd) : fd_(fd) {}
  /// Writes the line plus '\n'. Returns false once the peer is gone.
  bool send(std::string_view line);
  bool open() const { return open_; }
  void mark_closed() { open_ = false; }

 private:
  int fd_;
  std::mutex mu_;
  std::atomic<bool> open_{true};
};

class LineHandler {
 public:
  virtual ~LineHandler() = default;
  virtual void on_line(std::string_view line) = 0;
  virtual void on_close() {}
};

using HandlerFactory = std::function<std::unique_ptr<LineHandler>(std::shared_ptr<LineSink>)>;

/// Line-delimited TCP server, one thread per connection.
class LineServer {
 public:
  /// Binds and listens; port 0 picks a free port.
  LineServer(std::uint16_t port, HandlerFactory factory, const std::string& host = "127.0.0.1");
  ~LineServer();
  LineServer(const LineServer&) = delete;
  LineServer& operator=(const LineServer&) = delete;

  std::uint16_t port() const { return port_; }

  /// Accepts connections until stop() is called.
  void run();
  void stop();

 private:
  void serve(int fd);

  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  HandlerFactory factory_;
  std::atomic<bool> stopping_{false};
  std::mutex mu_;
  std::vector<int> conn_fds_;
  std::vector<std::thread> workers_;
};

/// Blocking line client, mainly for tests and scripted drivers.
class LineClient {
 public:
  LineClient(const std::string& host, std::uint16_t port);
  ~LineClient();
  LineClient(const LineClient&) = delete;
  LineClient& operator=(const LineClient&) = delete;

  void send(std::string_view line);
  /// Next line, or nullopt on timeout or EOF.
  std::optional<std::string> recv(int timeout_ms = 2000);

 private:
  int fd_ = -1;
  std::string buffer_;
};

}  // namespace abi::net
