#pragma once

#include "choreo/motion/motion_sequence.hpp"
#include "choreo/motion/skeleton.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace choreo {

inline constexpr int kMotionFormatVersion = 1;

/// "motion JSON v1": {format_version, fps, joint_names, parents,
/// rest_offsets, frames}.
nlohmann::json motionToJson(const MotionSequence& sequence, const Skeleton& skeleton);
std::string motionToJsonString(const MotionSequence& sequence, const Skeleton& skeleton);

/// Throws Error(IncompatibleFormat) when the document does not describe
/// the canonical skeleton at the engine fps.
MotionSequence motionFromJson(const nlohmann::json& document, const Skeleton& skeleton);
MotionSequence motionFromJsonString(const std::string& text, const Skeleton& skeleton);

} // namespace choreo
