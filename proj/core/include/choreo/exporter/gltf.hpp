#pragma once

#include "choreo/motion/motion_sequence.hpp"
#include "choreo/motion/skeleton.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace choreo {

/// glTF 2.0 document for a skeleton animation: one node per joint (rest
/// offsets as translations), 22 rotation channels plus a root translation
/// channel, LINEAR interpolation, keyframe times f / 20. Everything lives in
/// one base64 data-URI buffer.
nlohmann::json gltfDocument(
    const MotionSequence& sequence,
    const Skeleton& skeleton,
    std::string_view name = "choreo");

/// gltfDocument() serialized as a .gltf file.
std::string exportGltf(
    const MotionSequence& sequence,
    const Skeleton& skeleton,
    std::string_view name = "choreo");

} // namespace choreo
