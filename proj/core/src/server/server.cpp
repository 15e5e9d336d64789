#include "choreo/server/server.hpp"

#include "choreo/diffusion/sampler.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <spdlog/spdlog.h>

#include <cerrno>
#include <cstring>
#include <set>

namespace choreo {

struct Server::Connection {
  explicit Connection(int socket, std::string peerName) : fd(socket), peer(std::move(peerName)) {}
  ~Connection() {
    ::close(fd);
  }

  /// Writes one whole message; false once the peer is gone.
  bool send(const std::string& data) {
    std::lock_guard lock(writeMutex);
    if (!open) {
      return false;
    }
    size_t sent = 0;
    while (sent < data.size()) {
      const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
      if (n < 0 && errno == EINTR) {
        continue;
      }
      if (n <= 0) {
        open = false;
        return false;
      }
      sent += static_cast<size_t>(n);
    }
    return true;
  }

  void shutdown() {
    ::shutdown(fd, SHUT_RDWR);
  }

  const int fd;
  const std::string peer;
  std::mutex writeMutex;
  bool open = true;  // guarded by writeMutex
  std::set<std::string> seenIds;  // reader thread only
  std::atomic<bool> finished{false};
};

Server::Server(const Service& service, ServerConfig config) : service_(service), config_(std::move(config)) {}

Server::~Server() {
  stop();
}

int Server::start() {
  if (started_) {
    fail(ErrorCode::InvalidArgument, "server already started");
  }
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(config_.port));
  if (config_.port < 0 || config_.port > 65535 ||
      ::inet_pton(AF_INET, config_.bindAddress.c_str(), &addr.sin_addr) != 1) {
    fail(ErrorCode::InvalidArgument, "invalid bind address " + config_.bindAddress + ":" + std::to_string(config_.port));
  }
  listenFd_ = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (listenFd_ < 0) {
    fail(ErrorCode::Io, std::string("socket: ") + std::strerror(errno));
  }
  const int yes = 1;
  ::setsockopt(listenFd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  if (::bind(listenFd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(listenFd_, 64) != 0) {
    const std::string why = std::strerror(errno);
    ::close(listenFd_);
    listenFd_ = -1;
    fail(ErrorCode::Io, "cannot listen on " + config_.bindAddress + ":" + std::to_string(config_.port) + ": " + why);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listenFd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  started_ = true;
  worker_ = std::thread([this] { workerLoop(); });
  acceptor_ = std::thread([this] { acceptLoop(); });
  spdlog::info("listening on {}:{}", config_.bindAddress, port_);
  return port_;
}

void Server::stop() {
  {
    std::lock_guard lock(stopMutex_);
    stopRequested_ = true;
  }
  stopped_.notify_all();
  if (!started_ || stopping_.exchange(true)) {
    return;
  }
  ::shutdown(listenFd_, SHUT_RDWR);
  if (acceptor_.joinable()) {
    acceptor_.join();
  }
  ::close(listenFd_);
  {
    std::lock_guard lock(queueMutex_);
    queue_.clear();
  }
  queueReady_.notify_all();
  if (worker_.joinable()) {
    worker_.join();
  }
  std::list<std::pair<std::shared_ptr<Connection>, std::thread>> connections;
  {
    std::lock_guard lock(connectionsMutex_);
    connections.swap(connections_);
  }
  for (auto& [connection, thread] : connections) {
    connection->shutdown();
  }
  for (auto& [connection, thread] : connections) {
    thread.join();
  }
  spdlog::info("server stopped");
}

void Server::wait() {
  std::unique_lock lock(stopMutex_);
  stopped_.wait(lock, [this] { return stopRequested_; });
}

void Server::reapFinished() {
  std::lock_guard lock(connectionsMutex_);
  for (auto it = connections_.begin(); it != connections_.end();) {
    if (it->first->finished) {
      it->second.join();
      it = connections_.erase(it);
    } else {
      ++it;
    }
  }
}

void Server::acceptLoop() {
  while (!stopping_) {
    sockaddr_in peer{};
    socklen_t len = sizeof peer;
    const int fd = ::accept4(listenFd_, reinterpret_cast<sockaddr*>(&peer), &len, SOCK_CLOEXEC);
    if (fd < 0) {
      if (errno == EINTR || errno == ECONNABORTED) {
        continue;
      }
      if (!stopping_) {
        spdlog::error("accept failed: {}", std::strerror(errno));
      }
      return;
    }
    char host[INET_ADDRSTRLEN] = "?";
    ::inet_ntop(AF_INET, &peer.sin_addr, host, sizeof host);
    auto connection = std::make_shared<Connection>(fd, std::string(host) + ":" + std::to_string(ntohs(peer.sin_port)));
    spdlog::debug("connection from {}", connection->peer);
    reapFinished();
    std::lock_guard lock(connectionsMutex_);
    if (stopping_) {
      connection->shutdown();
      return;
    }
    connections_.emplace_back(connection, std::thread([this, connection] { serveConnection(connection); }));
  }
}

void Server::serveConnection(const std::shared_ptr<Connection>& connection) {
  std::string line;
  bool discarding = false;  // inside an over-long line, waiting for its newline
  char buf[64 * 1024];
  while (!stopping_) {
    const ssize_t n = ::recv(connection->fd, buf, sizeof buf, 0);
    if (n < 0 && errno == EINTR) {
      continue;
    }
    if (n <= 0) {
      break;
    }
    const char* p = buf;
    const char* end = buf + n;
    while (p < end) {
      const char* newline = static_cast<const char*>(std::memchr(p, '\n', static_cast<size_t>(end - p)));
      const char* stop = newline ? newline : end;
      if (!discarding) {
        line.append(p, stop);
        if (line.size() > config_.maxLineBytes) {
          connection->send(frameMessage(errorResponse(
              std::nullopt, kBadRequest, "line exceeds the per-line size limit", config_.maxLineBytes)));
          line.clear();
          line.shrink_to_fit();
          discarding = true;
        }
      }
      if (newline) {
        if (!discarding) {
          handleLine(connection, line);
        }
        line.clear();
        discarding = false;
      }
      p = newline ? newline + 1 : end;
    }
  }
  spdlog::debug("connection from {} closed", connection->peer);
  connection->finished = true;
}

void Server::handleLine(const std::shared_ptr<Connection>& connection, std::string_view line) {
  if (!line.empty() && line.back() == '\r') {
    line.remove_suffix(1);
  }
  if (line.find_first_not_of(" \t") == std::string_view::npos) {
    return;
  }
  auto parsed = parseRequest(line);
  if (auto* error = std::get_if<ProtocolError>(&parsed)) {
    connection->send(frameMessage(errorResponse(*error)));
    return;
  }
  Request request = std::move(std::get<Request>(parsed));
  if (!connection->seenIds.insert(request.requestId).second) {
    connection->send(frameMessage(errorResponse(request.requestId, kBadRequest, "duplicate request_id")));
    return;
  }
  spdlog::debug("{} {} {}", connection->peer, opName(request.op), request.requestId);
  if (!isQueuedOp(request.op)) {
    connection->send(frameMessage(run(request)));
    return;
  }
  {
    std::lock_guard lock(queueMutex_);
    queue_.push_back({connection, std::move(request), nextTicket_++});
  }
  queueReady_.notify_one();
}

void Server::workerLoop() {
  while (true) {
    Job job;
    {
      std::unique_lock lock(queueMutex_);
      queueReady_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
      if (stopping_) {
        return;
      }
      job = std::move(queue_.front());
      queue_.pop_front();
    }
    nlohmann::json response = run(job.request);
    response["payload"]["ticket"] = job.ticket;
    job.connection->send(frameMessage(response));
  }
}

nlohmann::json Server::run(const Request& request) const {
  try {
    return okResponse(request.requestId, service_.execute(request));
  } catch (const Error& e) {
    return errorResponse(request.requestId, e);
  } catch (const SamplingError& e) {
    nlohmann::json response =
        errorResponse(request.requestId, errorCodeName(ErrorCode::NumericalFailure), e.what());
    response["payload"]["step"] = e.step();
    response["payload"]["max_magnitude"] = e.maxMagnitude();
    return response;
  } catch (const std::exception& e) {
    spdlog::error("{} failed: {}", request.requestId, e.what());
    return errorResponse(request.requestId, kInternalError, e.what());
  }
}

} // namespace choreo
