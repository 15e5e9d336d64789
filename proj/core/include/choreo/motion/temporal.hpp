#pragma once

#include "choreo/motion/motion_sequence.hpp"

namespace choreo {

inline constexpr int kDefaultLowPassStride = 4;

/// Knot-subsample + linear interpolation low-pass filter. Knots sit at
/// 0, stride, 2*stride, ... plus the last frame; every other frame is
/// linearly interpolated per channel from its two neighbouring knots.
/// Knot rows are copied, so the filter is exactly idempotent.
FeatureMatrix lowPass(const FeatureMatrix& frames, int stride);
MotionSequence lowPass(const MotionSequence& sequence, int stride);

/// Frames [startFrame, endFrame).
MotionSequence slice(const MotionSequence& sequence, int startFrame, int endFrame);
MotionSequence concat(const MotionSequence& first, const MotionSequence& second);

/// Repeats the sequence end-to-end and truncates to numFrames.
MotionSequence tileToLength(const MotionSequence& sequence, int numFrames);

} // namespace choreo
