#pragma once

#include "choreo/motion/motion_sequence.hpp"
#include "choreo/motion/skeleton.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace choreo {

enum class ProvenanceKind { Generate, Import, Extend, Style, PartialBody, Blend };

std::string_view provenanceKindName(ProvenanceKind kind);
std::optional<ProvenanceKind> parseProvenanceKind(std::string_view name);

/// Number of parent ids an entry of this kind must carry.
int expectedParentCount(ProvenanceKind kind);

struct ProvenanceEntry {
  ProvenanceKind kind = ProvenanceKind::Generate;
  std::string promptOrParams;
  std::vector<std::string> parentIds;
  std::uint64_t seed = 0;

  bool operator==(const ProvenanceEntry&) const = default;
};

using Timestamp = std::chrono::sys_seconds;

/// UTC, "YYYY-MM-DDTHH:MM:SSZ".
std::string formatTimestamp(Timestamp t);
Timestamp parseTimestamp(std::string_view text);
Timestamp currentTimestamp();

/// 32 lowercase hex characters from 128 random bits.
std::string newSequenceId();
bool isSequenceId(std::string_view text);

struct SequenceRecord {
  std::string id;
  MotionSequence motion;
  /// Oldest first; the first entry is the Generate or Import root.
  std::vector<ProvenanceEntry> provenance;
  Timestamp createdAt{};
  bool inGallery = false;

  /// Throws Error(InvalidArgument) on a malformed id or provenance chain.
  void validate() const;

  bool operator==(const SequenceRecord&) const = default;
};

/// Record file body: metadata plus the motion as a motion JSON v1 object.
nlohmann::json recordToJson(const SequenceRecord& record, const Skeleton& skeleton);
SequenceRecord recordFromJson(const nlohmann::json& document, const Skeleton& skeleton);

nlohmann::json provenanceToJson(const ProvenanceEntry& entry);
ProvenanceEntry provenanceFromJson(const nlohmann::json& document);

} // namespace choreo
