#pragma once

#include "choreo/editing/engine.hpp"
#include "choreo/gallery/store.hpp"
#include "choreo/server/server.hpp"
#include "choreo/server/service.hpp"
#include "fixtures.hpp"
#include "wire_client.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace choreo::test {

/// A golden conversation: "> " lines are sent verbatim (after placeholder
/// substitution), "< " lines are the expected responses. '#' lines are
/// comments. Placeholders: <id:N> for the N-th distinct sequence id seen,
/// <timestamp> for UTC timestamps, <fixture:NAME> for a file's contents
/// under tests/fixtures/motion (requests only).
struct Transcript {
  std::vector<std::string> comments;
  std::vector<std::pair<std::string, std::string>> exchanges;

  static Transcript load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

/// Bidirectional mapping between live ids and their placeholders.
class Placeholders {
 public:
  /// Replaces every 32-hex id and timestamp with its placeholder.
  std::string normalize(const std::string& line);
  /// Replaces <id:N> and <fixture:NAME> with live values.
  std::string substitute(const std::string& line) const;

 private:
  std::map<std::string, int> ids_;
  std::vector<std::string> byIndex_;
};

/// Engine + write-through store + server on an ephemeral port, backed by the
/// tiny model. A fresh one gives every transcript the same starting state.
class TestServer {
 public:
  explicit TestServer(std::uint64_t seed = 0);
  ~TestServer();

  int port() const {
    return server_->port();
  }
  SequenceStore& store() {
    return store_;
  }
  const std::filesystem::path& storeDir() const {
    return dir_.path();
  }
  std::unique_ptr<WireClient> connect() const;

 private:
  TempDir dir_;
  Engine engine_;
  SequenceStore store_;
  std::unique_ptr<Service> service_;
  std::unique_ptr<Server> server_;
};

struct ReplayMismatch {
  size_t exchange;
  std::string expected;
  std::string actual;
};

/// Replays the transcript against a fresh TestServer, one request at a time.
std::vector<ReplayMismatch> replay(const Transcript& transcript);

/// Runs the requests of `transcript` and returns it with the observed
/// (normalized) responses filled in.
Transcript record(const Transcript& transcript);

} // namespace choreo::test
