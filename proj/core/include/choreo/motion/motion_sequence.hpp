#pragma once

#include "choreo/motion/types.hpp"

#include <span>

namespace choreo {

/// Immutable F x 135 motion clip at the fixed 20 fps clock.
///
/// Construction checks shape, the frame cap, finiteness, and that every 6D
/// block is non-degenerate (Gram-Schmidt maps it to a rotation). Use
/// fromRaw() for network outputs; it re-orthonormalizes every block first.
class MotionSequence {
 public:
  explicit MotionSequence(FeatureMatrix frames);

  /// Normalizes all 6D blocks, then validates.
  static MotionSequence fromRaw(FeatureMatrix frames);

  const FeatureMatrix& frames() const {
    return frames_;
  }

  int numFrames() const {
    return static_cast<int>(frames_.rows());
  }

  int fps() const {
    return kFps;
  }

  double durationSeconds() const {
    return static_cast<double>(numFrames()) / kFps;
  }

  std::span<const double> frame(int index) const;

  bool operator==(const MotionSequence& other) const;

 private:
  FeatureMatrix frames_;
};

/// Re-orthonormalizes every 6D block of the given rows in place.
void normalizeRotations(FeatureMatrix& frames, int firstRow = 0, int rowCount = -1);

/// Re-orthonormalizes the 6D blocks of the given joints in every row.
void normalizeJointRotations(FeatureMatrix& frames, std::span<const int> joints);

/// All-identity rotations with the root at the given translation.
FeatureMatrix restPoseFrames(int numFrames, const Eigen::Vector3d& rootTranslation);

} // namespace choreo
