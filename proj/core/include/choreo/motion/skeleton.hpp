#pragma once

#include "choreo/motion/types.hpp"

#include <Eigen/Core>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace choreo {

enum class BodyPart { UpperBody, LowerBody, LeftArm, RightArm, LeftLeg, RightLeg };

inline constexpr std::array<BodyPart, 6> kAllBodyParts = {
    BodyPart::UpperBody,
    BodyPart::LowerBody,
    BodyPart::LeftArm,
    BodyPart::RightArm,
    BodyPart::LeftLeg,
    BodyPart::RightLeg};

std::string_view bodyPartName(BodyPart part);
std::optional<BodyPart> parseBodyPart(std::string_view name);

/// Comma-separated list of valid part names, for error messages.
std::string validBodyPartNames();

/// Fixed 22-joint hierarchy. Joints are stored in topological order, so a
/// parent index is always smaller than its child's.
struct Skeleton {
  std::array<std::string, kNumJoints> jointNames;
  std::array<int, kNumJoints> parents{};
  std::array<Eigen::Vector3d, kNumJoints> restOffsets;
  std::map<BodyPart, std::vector<int>> bodyParts;

  /// Throws Error(InvalidArgument) when a structural invariant is broken.
  void validate() const;

  bool operator==(const Skeleton& other) const;
};

/// The canonical SMPL-like skeleton: pelvis=0; hips 1,2; spine chain 3,6,9;
/// knees 4,5; ankles 7,8; feet 10,11; neck 12; collars 13,14; head 15;
/// shoulders 16,17; elbows 18,19; wrists 20,21. Left side is +x, up is +y.
const Skeleton& defaultSkeleton();

Skeleton buildDefaultSkeleton();

/// Feature mask for a partial-body edit: true marks features held to the
/// reference, false marks features the sampler may regenerate.
struct BodyPartMask {
  BodyPart part;
  std::vector<int> jointIndices;
  std::vector<bool> featureMask;
};

/// Root translation counts as lower body, so it is free only for LowerBody.
BodyPartMask makeBodyPartMask(const Skeleton& skeleton, BodyPart part);

} // namespace choreo
