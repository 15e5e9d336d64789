#pragma once

#include "choreo/editing/engine.hpp"
#include "choreo/gallery/store.hpp"
#include "choreo/server/protocol.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>

namespace choreo {

/// Op semantics, independent of transport. Every method is safe to call
/// from several threads; the server still funnels heavy ops through one
/// worker to keep ordering deterministic.
class Service {
 public:
  /// `defaultSeed` seeds requests that do not carry their own seed.
  Service(const Engine& engine, SequenceStore& store, std::uint64_t defaultSeed = 0);

  /// Returns the ok payload; throws Error for anything the client did wrong
  /// or that the engine rejected.
  nlohmann::json execute(const Request& request) const;

  nlohmann::json generate(const nlohmann::json& params, std::uint64_t seed) const;
  nlohmann::json edit(const nlohmann::json& params, std::uint64_t seed) const;
  nlohmann::json importPose(const nlohmann::json& params) const;
  nlohmann::json listGallery(const nlohmann::json& params) const;
  nlohmann::json addToGallery(const nlohmann::json& params) const;
  nlohmann::json getSequence(const nlohmann::json& params) const;
  nlohmann::json exportSequence(const nlohmann::json& params) const;

  const Engine& engine() const {
    return engine_;
  }
  SequenceStore& store() const {
    return store_;
  }

 private:
  const Engine& engine_;
  SequenceStore& store_;
  std::uint64_t defaultSeed_;
};

/// Parses the "edit" object of an edit request.
EditCommand parseEditCommand(const nlohmann::json& edit);

/// Canonical parameter string recorded in provenance for an edit.
std::string describeEdit(const EditCommand& command);

} // namespace choreo
