#pragma once

#include "choreo/server/protocol.hpp"
#include "choreo/server/service.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

namespace choreo {

inline constexpr int kDefaultPort = 7701;

struct ServerConfig {
  std::string bindAddress = "127.0.0.1";
  /// 0 picks an ephemeral port; start() reports the bound one.
  int port = kDefaultPort;
  size_t maxLineBytes = kMaxLineBytes;
};

/// Newline-delimited JSON over TCP.
///
/// One acceptor thread, one reader thread per connection, one worker thread.
/// generate/edit go through a single FIFO queue and are answered in enqueue
/// order across all connections; the other ops are answered by the reader
/// thread as soon as they arrive. Each response is written as one complete
/// line under the connection's write lock.
class Server {
 public:
  Server(const Service& service, ServerConfig config);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds, listens and spawns the threads. Returns the bound port.
  int start();

  /// Stops accepting, closes every connection and joins all threads.
  /// Queued work that has not started is dropped. Idempotent.
  void stop();

  /// Blocks until stop() has been called (from another thread).
  void wait();

  int port() const {
    return port_;
  }

 private:
  struct Connection;
  struct Job {
    std::shared_ptr<Connection> connection;
    Request request;
    std::uint64_t ticket;
  };

  void acceptLoop();
  void serveConnection(const std::shared_ptr<Connection>& connection);
  void handleLine(const std::shared_ptr<Connection>& connection, std::string_view line);
  void workerLoop();
  nlohmann::json run(const Request& request) const;
  void reapFinished();

  const Service& service_;
  ServerConfig config_;
  int listenFd_ = -1;
  int port_ = 0;
  std::atomic<bool> stopping_{false};
  bool started_ = false;

  std::thread acceptor_;
  std::thread worker_;

  std::mutex queueMutex_;
  std::condition_variable queueReady_;
  std::deque<Job> queue_;
  std::uint64_t nextTicket_ = 0;

  std::mutex connectionsMutex_;
  std::list<std::pair<std::shared_ptr<Connection>, std::thread>> connections_;

  std::mutex stopMutex_;
  std::condition_variable stopped_;
  bool stopRequested_ = false;
};

} // namespace choreo
