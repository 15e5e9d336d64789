#include "choreo/motion/skeleton.hpp"

#include "choreo/common/error.hpp"

#include <algorithm>
#include <set>

namespace choreo {

int framesForSeconds(double seconds) {
  return static_cast<int>(std::lround(seconds * kFps));
}

std::string_view bodyPartName(BodyPart part) {
  switch (part) {
    case BodyPart::UpperBody:
      return "upper_body";
    case BodyPart::LowerBody:
      return "lower_body";
    case BodyPart::LeftArm:
      return "left_arm";
    case BodyPart::RightArm:
      return "right_arm";
    case BodyPart::LeftLeg:
      return "left_leg";
    case BodyPart::RightLeg:
      return "right_leg";
  }
  return "";
}

std::optional<BodyPart> parseBodyPart(std::string_view name) {
  for (const auto part : kAllBodyParts) {
    if (bodyPartName(part) == name) {
      return part;
    }
  }
  return std::nullopt;
}

std::string validBodyPartNames() {
  std::string out;
  for (const auto part : kAllBodyParts) {
    if (!out.empty()) {
      out += ", ";
    }
    out += bodyPartName(part);
  }
  return out;
}

void Skeleton::validate() const {
  if (parents[0] != -1) {
    fail(ErrorCode::InvalidArgument, "skeleton root must have parent -1");
  }
  for (int j = 1; j < kNumJoints; ++j) {
    if (parents[j] < 0 || parents[j] >= j) {
      fail(
          ErrorCode::InvalidArgument,
          "joint " + std::to_string(j) + " has parent " + std::to_string(parents[j]) +
              "; parents must precede children");
    }
  }
  if (bodyParts.size() != kAllBodyParts.size()) {
    fail(ErrorCode::InvalidArgument, "skeleton must define exactly six body parts");
  }
  std::set<int> covered;
  for (const auto part : kAllBodyParts) {
    const auto it = bodyParts.find(part);
    if (it == bodyParts.end()) {
      fail(ErrorCode::InvalidArgument, "missing body part " + std::string(bodyPartName(part)));
    }
    for (const int j : it->second) {
      if (j < 0 || j >= kNumJoints) {
        fail(ErrorCode::InvalidArgument, "body part joint index out of range");
      }
      covered.insert(j);
    }
  }
  if (static_cast<int>(covered.size()) != kNumJoints) {
    fail(ErrorCode::InvalidArgument, "body parts must cover every joint");
  }
  const auto subset = [&](BodyPart inner, BodyPart outer) {
    const auto& a = bodyParts.at(inner);
    const auto& b = bodyParts.at(outer);
    return std::all_of(a.begin(), a.end(), [&](int j) {
      return std::find(b.begin(), b.end(), j) != b.end();
    });
  };
  if (!subset(BodyPart::LeftArm, BodyPart::UpperBody) ||
      !subset(BodyPart::RightArm, BodyPart::UpperBody) ||
      !subset(BodyPart::LeftLeg, BodyPart::LowerBody) ||
      !subset(BodyPart::RightLeg, BodyPart::LowerBody)) {
    fail(ErrorCode::InvalidArgument, "limb parts must nest inside upper/lower body");
  }
}

bool Skeleton::operator==(const Skeleton& other) const {
  return jointNames == other.jointNames && parents == other.parents &&
      restOffsets == other.restOffsets && bodyParts == other.bodyParts;
}

Skeleton buildDefaultSkeleton() {
  Skeleton s;
  s.jointNames = {
      "pelvis",      "left_hip",       "right_hip",      "spine1",     "left_knee",
      "right_knee",  "spine2",         "left_ankle",     "right_ankle", "spine3",
      "left_foot",   "right_foot",     "neck",           "left_collar", "right_collar",
      "head",        "left_shoulder",  "right_shoulder", "left_elbow", "right_elbow",
      "left_wrist",  "right_wrist"};
  s.parents = {-1, 0, 0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 9, 9, 12, 13, 14, 16, 17, 18, 19};
  s.restOffsets = {
      Eigen::Vector3d(0.0, 0.0, 0.0),
      Eigen::Vector3d(0.06, -0.09, 0.0),
      Eigen::Vector3d(-0.06, -0.09, 0.0),
      Eigen::Vector3d(0.0, 0.11, -0.02),
      Eigen::Vector3d(0.0, -0.38, 0.0),
      Eigen::Vector3d(0.0, -0.38, 0.0),
      Eigen::Vector3d(0.0, 0.13, 0.0),
      Eigen::Vector3d(0.0, -0.40, -0.03),
      Eigen::Vector3d(0.0, -0.40, -0.03),
      Eigen::Vector3d(0.0, 0.06, 0.02),
      Eigen::Vector3d(0.0, -0.06, 0.12),
      Eigen::Vector3d(0.0, -0.06, 0.12),
      Eigen::Vector3d(0.0, 0.21, -0.03),
      Eigen::Vector3d(0.08, 0.11, -0.01),
      Eigen::Vector3d(-0.08, 0.11, -0.01),
      Eigen::Vector3d(0.0, 0.09, 0.05),
      Eigen::Vector3d(0.12, 0.04, 0.0),
      Eigen::Vector3d(-0.12, 0.04, 0.0),
      Eigen::Vector3d(0.26, 0.0, 0.0),
      Eigen::Vector3d(-0.26, 0.0, 0.0),
      Eigen::Vector3d(0.25, 0.0, 0.0),
      Eigen::Vector3d(-0.25, 0.0, 0.0)};
  s.bodyParts = {
      {BodyPart::UpperBody, {3, 6, 9, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21}},
      {BodyPart::LowerBody, {0, 1, 2, 4, 5, 7, 8, 10, 11}},
      {BodyPart::LeftArm, {13, 16, 18, 20}},
      {BodyPart::RightArm, {14, 17, 19, 21}},
      {BodyPart::LeftLeg, {1, 4, 7, 10}},
      {BodyPart::RightLeg, {2, 5, 8, 11}}};
  return s;
}

const Skeleton& defaultSkeleton() {
  static const Skeleton skeleton = [] {
    auto s = buildDefaultSkeleton();
    s.validate();
    return s;
  }();
  return skeleton;
}

BodyPartMask makeBodyPartMask(const Skeleton& skeleton, BodyPart part) {
  BodyPartMask mask;
  mask.part = part;
  mask.jointIndices = skeleton.bodyParts.at(part);
  mask.featureMask.assign(kFeatureDim, true);
  for (const int j : mask.jointIndices) {
    for (int c = 0; c < kRotationWidth; ++c) {
      mask.featureMask[rotationOffset(j) + c] = false;
    }
  }
  if (part == BodyPart::LowerBody) {
    for (int c = 0; c < kRootWidth; ++c) {
      mask.featureMask[c] = false;
    }
  }
  return mask;
}

} // namespace choreo
