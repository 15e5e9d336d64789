#include "choreo/motion/motion_json.hpp"

#include "choreo/common/error.hpp"

namespace choreo {

using nlohmann::json;

json motionToJson(const MotionSequence& sequence, const Skeleton& skeleton) {
  json doc;
  doc["format_version"] = kMotionFormatVersion;
  doc["fps"] = sequence.fps();
  doc["joint_names"] = skeleton.jointNames;
  doc["parents"] = skeleton.parents;
  json offsets = json::array();
  for (const auto& o : skeleton.restOffsets) {
    offsets.push_back({o.x(), o.y(), o.z()});
  }
  doc["rest_offsets"] = std::move(offsets);
  json frames = json::array();
  const auto& m = sequence.frames();
  for (int f = 0; f < m.rows(); ++f) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      row.push_back(m(f, c));
    }
    frames.push_back(std::move(row));
  }
  doc["frames"] = std::move(frames);
  return doc;
}

std::string motionToJsonString(const MotionSequence& sequence, const Skeleton& skeleton) {
  return motionToJson(sequence, skeleton).dump();
}

namespace {

[[noreturn]] void incompatible(const std::string& why) {
  fail(ErrorCode::IncompatibleFormat, "incompatible motion format: " + why);
}

} // namespace

MotionSequence motionFromJson(const json& doc, const Skeleton& skeleton) {
  if (!doc.is_object()) {
    incompatible("expected a JSON object");
  }
  if (doc.value("format_version", 0) != kMotionFormatVersion) {
    incompatible("format_version must be 1");
  }
  if (!doc.contains("fps") || !doc["fps"].is_number() || doc["fps"].get<double>() != kFps) {
    incompatible("fps must be " + std::to_string(kFps));
  }
  const auto& names = doc.value("joint_names", json::array());
  const auto& parents = doc.value("parents", json::array());
  const auto& offsets = doc.value("rest_offsets", json::array());
  if (!names.is_array() || names.size() != kNumJoints || !parents.is_array() ||
      parents.size() != kNumJoints || !offsets.is_array() || offsets.size() != kNumJoints) {
    incompatible("expected " + std::to_string(kNumJoints) + " joints");
  }
  try {
    for (int j = 0; j < kNumJoints; ++j) {
      if (names[j].get<std::string>() != skeleton.jointNames[j] ||
          parents[j].get<int>() != skeleton.parents[j]) {
        incompatible("joint " + std::to_string(j) + " does not match the canonical skeleton");
      }
    }
  } catch (const json::exception&) {
    incompatible("malformed skeleton description");
  }

  const auto it = doc.find("frames");
  if (it == doc.end() || !it->is_array() || it->empty()) {
    incompatible("frames must be a non-empty array");
  }
  if (it->size() > static_cast<size_t>(kMaxFrames)) {
    incompatible("too many frames");
  }
  FeatureMatrix frames(static_cast<Eigen::Index>(it->size()), kFeatureDim);
  for (size_t f = 0; f < it->size(); ++f) {
    const auto& row = (*it)[f];
    if (!row.is_array() || row.size() != static_cast<size_t>(kFeatureDim)) {
      incompatible(
          "frame " + std::to_string(f) + " must have " + std::to_string(kFeatureDim) + " values");
    }
    for (int c = 0; c < kFeatureDim; ++c) {
      if (!row[c].is_number()) {
        incompatible("non-numeric value in frame " + std::to_string(f));
      }
      frames(static_cast<Eigen::Index>(f), c) = row[c].get<double>();
    }
  }
  try {
    return MotionSequence(std::move(frames));
  } catch (const Error& e) {
    incompatible(e.what());
  }
}

MotionSequence motionFromJsonString(const std::string& text, const Skeleton& skeleton) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    incompatible("unparseable JSON at byte " + std::to_string(e.byte > 0 ? e.byte - 1 : 0));
  }
  return motionFromJson(doc, skeleton);
}

} // namespace choreo
