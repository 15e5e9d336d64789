#pragma once

#include <Eigen/Core>

namespace choreo {

inline constexpr int kNumJoints = 22;
inline constexpr int kRotationWidth = 6;
inline constexpr int kRootWidth = 3;
inline constexpr int kFeatureDim = kRootWidth + kNumJoints * kRotationWidth; // 135

inline constexpr int kFps = 20;
inline constexpr int kMaxFrames = 1200; // 60 s engine-wide cap

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Frames x features, one row per frame.
using FeatureMatrix = RowMatrix;

/// Column of the first feature of a joint's 6D rotation block.
constexpr int rotationOffset(int joint) {
  return kRootWidth + joint * kRotationWidth;
}

/// Frame count for a duration at the fixed engine clock.
int framesForSeconds(double seconds);

} // namespace choreo
