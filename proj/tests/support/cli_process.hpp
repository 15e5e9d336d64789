#pragma once

#include <sys/types.h>

#include <cstdint>

#include <string>
#include <vector>

namespace choreo::test {

/// A child process with its stdout captured through a pipe.
class ChildProcess {
 public:
  ChildProcess(const std::string& program, const std::vector<std::string>& args);
  ~ChildProcess();
  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  /// Next stdout line, or throws after `timeoutMs` / EOF.
  std::string readLine(int timeoutMs = 60000);
  /// Sends the signal and reaps the child; returns the raw wait status.
  int kill(int signal);
  /// Waits for exit; returns the raw wait status.
  int wait();
  pid_t pid() const {
    return pid_;
  }

 private:
  pid_t pid_ = -1;
  int stdout_ = -1;
  std::string buffer_;
  bool reaped_ = false;
  int status_ = 0;
};

/// Starts `choreo serve` on an ephemeral port and returns once it listens.
struct ServeProcess {
  ChildProcess process;
  int port = 0;

  ServeProcess(const std::string& cli, const std::string& store, const std::string& model, std::uint64_t seed);
};

} // namespace choreo::test
