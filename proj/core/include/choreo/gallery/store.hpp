#pragma once

#include "choreo/gallery/record.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace choreo {

struct GallerySummary {
  std::string id;
  /// Relative to the store directory: "thumbnails/<id>.png".
  std::string thumbnail;
  double durationSeconds = 0.0;
};

/// A record file that could not be read back.
struct LoadIssue {
  std::string id;
  std::string message;
};

/// Sequence records keyed by id.
///
/// Readers run concurrently; mutations are serialized. A store opened on a
/// directory writes through: every put/addToGallery rewrites that record's
/// file (temp file + rename) and its thumbnail before returning, so a killed
/// process never leaves a half-written record behind.
class SequenceStore {
 public:
  /// In-memory store.
  explicit SequenceStore(const Skeleton& skeleton = defaultSkeleton());

  /// Loads `directory` (created if missing) and writes through to it.
  /// Unreadable records are skipped and reported in `issues`.
  static SequenceStore open(
      const std::filesystem::path& directory,
      std::vector<LoadIssue>* issues = nullptr,
      const Skeleton& skeleton = defaultSkeleton());

  /// Reads a directory without binding to it.
  static SequenceStore load(
      const std::filesystem::path& directory,
      std::vector<LoadIssue>* issues = nullptr,
      const Skeleton& skeleton = defaultSkeleton());

  SequenceStore(SequenceStore&& other) noexcept;
  SequenceStore& operator=(SequenceStore&& other) noexcept;

  /// Stores the record. An empty id is replaced by a fresh random one; an
  /// existing id is rejected. Every parent id must already be present.
  std::string put(SequenceRecord record);

  /// Throws Error(NotFound, "sequence not found").
  SequenceRecord get(const std::string& id) const;
  bool contains(const std::string& id) const;

  /// Idempotent; keeps the position of the first add.
  void addToGallery(const std::string& id);

  /// Gallery members in the order they were added.
  std::vector<GallerySummary> listGallery() const;

  /// Every id in put order.
  std::vector<std::string> ids() const;
  size_t size() const;

  /// Writes every record and thumbnail under `directory`.
  void persist(const std::filesystem::path& directory) const;

  const std::optional<std::filesystem::path>& directory() const {
    return directory_;
  }

 private:
  struct Entry {
    SequenceRecord record;
    std::uint64_t order = 0;
    std::optional<std::uint64_t> galleryOrder;
  };

  void writeEntry(const std::filesystem::path& directory, const Entry& entry, bool withThumbnail) const;

  const Skeleton* skeleton_;
  std::optional<std::filesystem::path> directory_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, Entry> entries_;
  std::uint64_t nextOrder_ = 0;
  std::uint64_t nextGalleryOrder_ = 0;
};

/// Relative thumbnail path for an id.
std::string thumbnailPath(const std::string& id);

} // namespace choreo
