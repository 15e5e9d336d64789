#include "choreo/gallery/store.hpp"

#include "choreo/common/error.hpp"
#include "choreo/exporter/render.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

namespace choreo {

namespace fs = std::filesystem;

namespace {

constexpr const char* kRecordsDir = "records";
constexpr const char* kThumbnailsDir = "thumbnails";

void writeAtomically(const fs::path& path, const char* data, size_t size) {
  fs::path temp = path;
  temp += ".tmp";
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    file.write(data, static_cast<std::streamsize>(size));
    file.flush();
    if (!file) {
      fail(ErrorCode::Io, "cannot write " + temp.string());
    }
  }
  std::error_code ec;
  fs::rename(temp, path, ec);
  if (ec) {
    fail(ErrorCode::Io, "cannot rename " + temp.string() + ": " + ec.message());
  }
}

[[noreturn]] void notFound() {
  fail(ErrorCode::NotFound, "sequence not found");
}

} // namespace

std::string thumbnailPath(const std::string& id) {
  return std::string(kThumbnailsDir) + "/" + id + ".png";
}

SequenceStore::SequenceStore(const Skeleton& skeleton) : skeleton_(&skeleton) {}

SequenceStore::SequenceStore(SequenceStore&& other) noexcept : skeleton_(other.skeleton_) {
  std::unique_lock lock(other.mutex_);
  directory_ = std::move(other.directory_);
  entries_ = std::move(other.entries_);
  nextOrder_ = other.nextOrder_;
  nextGalleryOrder_ = other.nextGalleryOrder_;
}

SequenceStore& SequenceStore::operator=(SequenceStore&& other) noexcept {
  if (this != &other) {
    std::scoped_lock lock(mutex_, other.mutex_);
    skeleton_ = other.skeleton_;
    directory_ = std::move(other.directory_);
    entries_ = std::move(other.entries_);
    nextOrder_ = other.nextOrder_;
    nextGalleryOrder_ = other.nextGalleryOrder_;
  }
  return *this;
}

SequenceStore SequenceStore::load(
    const fs::path& directory,
    std::vector<LoadIssue>* issues,
    const Skeleton& skeleton) {
  SequenceStore store(skeleton);
  const fs::path records = directory / kRecordsDir;
  if (!fs::exists(records)) {
    return store;
  }
  std::vector<fs::path> files;
  for (const auto& item : fs::directory_iterator(records)) {
    if (item.is_regular_file() && item.path().extension() == ".json") {
      files.push_back(item.path());
    }
  }
  std::sort(files.begin(), files.end());

  const auto report = [&](const std::string& id, const std::string& message) {
    if (issues) {
      issues->push_back({id, message});
    }
  };
  for (const auto& path : files) {
    const std::string id = path.stem().string();
    try {
      std::ifstream in(path, std::ios::binary);
      std::stringstream buf;
      buf << in.rdbuf();
      const nlohmann::json doc = nlohmann::json::parse(buf.str());
      Entry entry{recordFromJson(doc, skeleton), 0, std::nullopt};
      if (entry.record.id != id) {
        fail(ErrorCode::IncompatibleFormat, "record id does not match its file name");
      }
      const auto& meta = doc.at("store");
      entry.order = meta.at("order").get<std::uint64_t>();
      if (!meta.at("gallery_order").is_null()) {
        entry.galleryOrder = meta.at("gallery_order").get<std::uint64_t>();
      }
      store.nextOrder_ = std::max(store.nextOrder_, entry.order + 1);
      if (entry.galleryOrder) {
        store.nextGalleryOrder_ = std::max(store.nextGalleryOrder_, *entry.galleryOrder + 1);
      }
      store.entries_.emplace(id, std::move(entry));
    } catch (const std::exception& e) {
      report(id, e.what());
    }
  }
  for (const auto& [id, entry] : store.entries_) {
    for (const auto& step : entry.record.provenance) {
      for (const auto& parent : step.parentIds) {
        if (!store.entries_.count(parent)) {
          report(id, "provenance parent " + parent + " is missing");
        }
      }
    }
  }
  return store;
}

SequenceStore SequenceStore::open(
    const fs::path& directory,
    std::vector<LoadIssue>* issues,
    const Skeleton& skeleton) {
  std::error_code ec;
  fs::create_directories(directory / kRecordsDir, ec);
  fs::create_directories(directory / kThumbnailsDir, ec);
  if (ec) {
    fail(ErrorCode::Io, "cannot create store directory " + directory.string() + ": " + ec.message());
  }
  SequenceStore store = load(directory, issues, skeleton);
  store.directory_ = directory;
  return store;
}

void SequenceStore::writeEntry(const fs::path& directory, const Entry& entry, bool withThumbnail) const {
  nlohmann::json doc = recordToJson(entry.record, *skeleton_);
  doc["store"] = {
      {"order", entry.order},
      {"gallery_order",
       entry.galleryOrder ? nlohmann::json(*entry.galleryOrder) : nlohmann::json(nullptr)}};
  const std::string text = doc.dump() + "\n";
  if (withThumbnail) {
    const auto png = renderFramePng(*skeleton_, entry.record.motion.frame(0));
    writeAtomically(
        directory / thumbnailPath(entry.record.id), reinterpret_cast<const char*>(png.data()), png.size());
  }
  // The record file goes last: once it exists, its thumbnail does too.
  writeAtomically(directory / kRecordsDir / (entry.record.id + ".json"), text.data(), text.size());
}

std::string SequenceStore::put(SequenceRecord record) {
  std::unique_lock lock(mutex_);
  if (record.id.empty()) {
    do {
      record.id = newSequenceId();
    } while (entries_.count(record.id));
  } else if (entries_.count(record.id)) {
    fail(ErrorCode::InvalidArgument, "sequence id already exists");
  }
  record.validate();
  for (const auto& step : record.provenance) {
    for (const auto& parent : step.parentIds) {
      if (!entries_.count(parent)) {
        fail(ErrorCode::NotFound, "sequence not found");
      }
    }
  }
  Entry entry{std::move(record), nextOrder_, std::nullopt};
  if (entry.record.inGallery) {
    entry.galleryOrder = nextGalleryOrder_;
  }
  if (directory_) {
    writeEntry(*directory_, entry, true);
  }
  ++nextOrder_;
  if (entry.galleryOrder) {
    ++nextGalleryOrder_;
  }
  const std::string id = entry.record.id;
  entries_.emplace(id, std::move(entry));
  return id;
}

SequenceRecord SequenceStore::get(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(id);
  if (it == entries_.end()) {
    notFound();
  }
  return it->second.record;
}

bool SequenceStore::contains(const std::string& id) const {
  std::shared_lock lock(mutex_);
  return entries_.count(id) != 0;
}

void SequenceStore::addToGallery(const std::string& id) {
  std::unique_lock lock(mutex_);
  const auto it = entries_.find(id);
  if (it == entries_.end()) {
    notFound();
  }
  if (it->second.galleryOrder) {
    return;
  }
  Entry updated = it->second;
  updated.record.inGallery = true;
  updated.galleryOrder = nextGalleryOrder_;
  if (directory_) {
    writeEntry(*directory_, updated, false);
  }
  ++nextGalleryOrder_;
  it->second = std::move(updated);
}

std::vector<GallerySummary> SequenceStore::listGallery() const {
  std::shared_lock lock(mutex_);
  std::vector<const Entry*> members;
  for (const auto& [id, entry] : entries_) {
    if (entry.galleryOrder) {
      members.push_back(&entry);
    }
  }
  std::sort(members.begin(), members.end(), [](const Entry* a, const Entry* b) {
    return *a->galleryOrder < *b->galleryOrder;
  });
  std::vector<GallerySummary> out;
  for (const Entry* e : members) {
    out.push_back({e->record.id, thumbnailPath(e->record.id), e->record.motion.durationSeconds()});
  }
  return out;
}

std::vector<std::string> SequenceStore::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<const Entry*> all;
  for (const auto& [id, entry] : entries_) {
    all.push_back(&entry);
  }
  std::sort(all.begin(), all.end(), [](const Entry* a, const Entry* b) { return a->order < b->order; });
  std::vector<std::string> out;
  for (const Entry* e : all) {
    out.push_back(e->record.id);
  }
  return out;
}

size_t SequenceStore::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void SequenceStore::persist(const fs::path& directory) const {
  std::shared_lock lock(mutex_);
  std::error_code ec;
  fs::create_directories(directory / kRecordsDir, ec);
  fs::create_directories(directory / kThumbnailsDir, ec);
  if (ec) {
    fail(ErrorCode::Io, "cannot create store directory " + directory.string() + ": " + ec.message());
  }
  for (const auto& [id, entry] : entries_) {
    writeEntry(directory, entry, true);
  }
}

} // namespace choreo
