#include "choreo/gallery/record.hpp"

#include "choreo/common/error.hpp"
#include "choreo/motion/motion_json.hpp"

#include <array>
#include <cstdio>
#include <ctime>
#include <random>

namespace choreo {

namespace {

constexpr std::array<std::pair<ProvenanceKind, std::string_view>, 6> kKindNames = {{
    {ProvenanceKind::Generate, "generate"},
    {ProvenanceKind::Import, "import"},
    {ProvenanceKind::Extend, "extend"},
    {ProvenanceKind::Style, "style"},
    {ProvenanceKind::PartialBody, "partial_body"},
    {ProvenanceKind::Blend, "blend"},
}};

bool isRoot(ProvenanceKind kind) {
  return kind == ProvenanceKind::Generate || kind == ProvenanceKind::Import;
}

} // namespace

std::string_view provenanceKindName(ProvenanceKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) {
      return name;
    }
  }
  return "unknown";
}

std::optional<ProvenanceKind> parseProvenanceKind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) {
      return k;
    }
  }
  return std::nullopt;
}

int expectedParentCount(ProvenanceKind kind) {
  if (isRoot(kind)) {
    return 0;
  }
  return kind == ProvenanceKind::Blend ? 2 : 1;
}

std::string formatTimestamp(Timestamp t) {
  const std::time_t raw = static_cast<std::time_t>(t.time_since_epoch().count());
  std::tm tm{};
  gmtime_r(&raw, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Timestamp parseTimestamp(std::string_view text) {
  std::tm tm{};
  char trailing = 0;
  const std::string s(text);
  if (s.size() != 20 ||
      std::sscanf(
          s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &tm.tm_year, &tm.tm_mon, &tm.tm_mday, &tm.tm_hour,
          &tm.tm_min, &tm.tm_sec, &trailing) != 7 ||
      trailing != 'Z') {
    fail(ErrorCode::IncompatibleFormat, "malformed timestamp: " + s);
  }
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  return Timestamp(std::chrono::seconds(timegm(&tm)));
}

Timestamp currentTimestamp() {
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

std::string newSequenceId() {
  static thread_local std::random_device device;
  std::uniform_int_distribution<std::uint64_t> dist;
  char buf[33];
  std::snprintf(
      buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(dist(device)),
      static_cast<unsigned long long>(dist(device)));
  return buf;
}

bool isSequenceId(std::string_view text) {
  if (text.size() != 32) {
    return false;
  }
  for (char c : text) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) {
      return false;
    }
  }
  return true;
}

void SequenceRecord::validate() const {
  if (!isSequenceId(id)) {
    fail(ErrorCode::InvalidArgument, "sequence id must be 32 lowercase hex characters");
  }
  if (provenance.empty() || !isRoot(provenance.front().kind)) {
    fail(ErrorCode::InvalidArgument, "provenance must start with a generate or import entry");
  }
  for (size_t i = 0; i < provenance.size(); ++i) {
    const ProvenanceEntry& entry = provenance[i];
    if (i > 0 && isRoot(entry.kind)) {
      fail(ErrorCode::InvalidArgument, "only the first provenance entry may be a root");
    }
    if (static_cast<int>(entry.parentIds.size()) != expectedParentCount(entry.kind)) {
      fail(
          ErrorCode::InvalidArgument,
          std::string("wrong parent count for a ") + std::string(provenanceKindName(entry.kind)) +
              " entry");
    }
    for (const auto& parent : entry.parentIds) {
      if (!isSequenceId(parent) || parent == id) {
        fail(ErrorCode::InvalidArgument, "invalid provenance parent id");
      }
    }
  }
}

nlohmann::json provenanceToJson(const ProvenanceEntry& entry) {
  return {
      {"kind", provenanceKindName(entry.kind)},
      {"prompt_or_params", entry.promptOrParams},
      {"parent_ids", entry.parentIds},
      {"seed", entry.seed}};
}

ProvenanceEntry provenanceFromJson(const nlohmann::json& document) {
  try {
    ProvenanceEntry entry;
    const auto kind = parseProvenanceKind(document.at("kind").get<std::string>());
    if (!kind) {
      fail(ErrorCode::IncompatibleFormat, "unknown provenance kind");
    }
    entry.kind = *kind;
    entry.promptOrParams = document.at("prompt_or_params").get<std::string>();
    entry.parentIds = document.at("parent_ids").get<std::vector<std::string>>();
    entry.seed = document.at("seed").get<std::uint64_t>();
    return entry;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::IncompatibleFormat, std::string("malformed provenance entry: ") + e.what());
  }
}

nlohmann::json recordToJson(const SequenceRecord& record, const Skeleton& skeleton) {
  nlohmann::json provenance = nlohmann::json::array();
  for (const auto& entry : record.provenance) {
    provenance.push_back(provenanceToJson(entry));
  }
  return {
      {"format_version", 1},
      {"id", record.id},
      {"created_at", formatTimestamp(record.createdAt)},
      {"in_gallery", record.inGallery},
      {"provenance", std::move(provenance)},
      {"motion", motionToJson(record.motion, skeleton)}};
}

SequenceRecord recordFromJson(const nlohmann::json& document, const Skeleton& skeleton) {
  try {
    if (document.at("format_version").get<int>() != 1) {
      fail(ErrorCode::IncompatibleFormat, "unsupported record format version");
    }
    std::vector<ProvenanceEntry> provenance;
    for (const auto& entry : document.at("provenance")) {
      provenance.push_back(provenanceFromJson(entry));
    }
    SequenceRecord record{
        document.at("id").get<std::string>(),
        motionFromJson(document.at("motion"), skeleton),
        std::move(provenance),
        parseTimestamp(document.at("created_at").get<std::string>()),
        document.at("in_gallery").get<bool>()};
    record.validate();
    return record;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::IncompatibleFormat, std::string("malformed record: ") + e.what());
  }
}

} // namespace choreo
