#include "cli_process.hpp"

#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <cstring>
#include <stdexcept>

extern char** environ;

namespace choreo::test {

ChildProcess::ChildProcess(const std::string& program, const std::vector<std::string>& args) {
  int pipeFds[2];
  if (::pipe(pipeFds) != 0) {
    throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, pipeFds[1], STDOUT_FILENO);
  posix_spawn_file_actions_addclose(&actions, pipeFds[0]);
  posix_spawn_file_actions_addclose(&actions, pipeFds[1]);

  std::vector<char*> argv;
  argv.push_back(const_cast<char*>(program.c_str()));
  for (const auto& a : args) {
    argv.push_back(const_cast<char*>(a.c_str()));
  }
  argv.push_back(nullptr);
  const int rc = ::posix_spawn(&pid_, program.c_str(), &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(pipeFds[1]);
  if (rc != 0) {
    ::close(pipeFds[0]);
    throw std::runtime_error("cannot spawn " + program + ": " + std::strerror(rc));
  }
  stdout_ = pipeFds[0];
}

ChildProcess::~ChildProcess() {
  if (!reaped_) {
    kill(SIGKILL);
  }
  if (stdout_ >= 0) {
    ::close(stdout_);
  }
}

std::string ChildProcess::readLine(int timeoutMs) {
  while (true) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    pollfd p{stdout_, POLLIN, 0};
    const int ready = ::poll(&p, 1, timeoutMs);
    if (ready < 0 && errno == EINTR) {
      continue;
    }
    if (ready <= 0) {
      throw std::runtime_error("child produced no output in time");
    }
    char chunk[4096];
    const ssize_t n = ::read(stdout_, chunk, sizeof chunk);
    if (n <= 0) {
      throw std::runtime_error("child closed its stdout");
    }
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

int ChildProcess::kill(int signal) {
  if (!reaped_) {
    ::kill(pid_, signal);
  }
  return wait();
}

int ChildProcess::wait() {
  if (!reaped_) {
    while (::waitpid(pid_, &status_, 0) < 0 && errno == EINTR) {
    }
    reaped_ = true;
  }
  return status_;
}

ServeProcess::ServeProcess(const std::string& cli, const std::string& store, const std::string& model, std::uint64_t seed)
    : process(cli,
              {"--log-level", "warn", "serve", "--port", "0", "--store", store, "--model", model, "--seed",
               std::to_string(seed)}) {
  const std::string line = process.readLine();
  const auto colon = line.rfind(':');
  if (line.rfind("listening on ", 0) != 0 || colon == std::string::npos) {
    throw std::runtime_error("unexpected serve banner: " + line);
  }
  port = std::stoi(line.substr(colon + 1));
}

} // namespace choreo::test
