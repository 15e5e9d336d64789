#include "choreo/motion/motion_sequence.hpp"

#include "choreo/common/error.hpp"
#include "choreo/motion/rotation.hpp"

#include <string>

namespace choreo {

namespace {

std::span<double, 6> block(FeatureMatrix& frames, int row, int joint) {
  return std::span<double, 6>(frames.row(row).data() + rotationOffset(joint), 6);
}

} // namespace

MotionSequence::MotionSequence(FeatureMatrix frames) : frames_(std::move(frames)) {
  if (frames_.cols() != kFeatureDim) {
    fail(
        ErrorCode::InvalidArgument,
        "motion must have " + std::to_string(kFeatureDim) + " features per frame, got " +
            std::to_string(frames_.cols()));
  }
  if (frames_.rows() < 1 || frames_.rows() > kMaxFrames) {
    fail(
        ErrorCode::InvalidArgument,
        "motion length " + std::to_string(frames_.rows()) + " outside [1, " +
            std::to_string(kMaxFrames) + "] frames");
  }
  if (!frames_.allFinite()) {
    fail(ErrorCode::InvalidArgument, "motion contains non-finite values");
  }
  for (int f = 0; f < frames_.rows(); ++f) {
    for (int j = 0; j < kNumJoints; ++j) {
      const std::span<const double, 6> six(frames_.row(f).data() + rotationOffset(j), 6);
      if (!isNonDegenerate6D(six)) {
        fail(
            ErrorCode::InvalidArgument,
            "degenerate rotation at frame " + std::to_string(f) + ", joint " + std::to_string(j));
      }
    }
  }
}

MotionSequence MotionSequence::fromRaw(FeatureMatrix frames) {
  if (frames.cols() == kFeatureDim) {
    normalizeRotations(frames);
  }
  return MotionSequence(std::move(frames));
}

std::span<const double> MotionSequence::frame(int index) const {
  if (index < 0 || index >= numFrames()) {
    fail(ErrorCode::InvalidArgument, "frame index out of range");
  }
  return {frames_.row(index).data(), static_cast<size_t>(kFeatureDim)};
}

bool MotionSequence::operator==(const MotionSequence& other) const {
  return frames_.rows() == other.frames_.rows() && frames_ == other.frames_;
}

void normalizeRotations(FeatureMatrix& frames, int firstRow, int rowCount) {
  const int end = rowCount < 0 ? static_cast<int>(frames.rows()) : firstRow + rowCount;
  for (int f = firstRow; f < end; ++f) {
    for (int j = 0; j < kNumJoints; ++j) {
      normalize6D(block(frames, f, j));
    }
  }
}

void normalizeJointRotations(FeatureMatrix& frames, std::span<const int> joints) {
  for (int f = 0; f < frames.rows(); ++f) {
    for (const int j : joints) {
      normalize6D(block(frames, f, j));
    }
  }
}

FeatureMatrix restPoseFrames(int numFrames, const Eigen::Vector3d& rootTranslation) {
  FeatureMatrix frames = FeatureMatrix::Zero(numFrames, kFeatureDim);
  const Rotation6D identity = rotationTo6D(Eigen::Matrix3d::Identity());
  for (int f = 0; f < numFrames; ++f) {
    frames.row(f).head<3>() = rootTranslation.transpose();
    for (int j = 0; j < kNumJoints; ++j) {
      frames.row(f).segment<6>(rotationOffset(j)) = identity.transpose();
    }
  }
  return frames;
}

} // namespace choreo
