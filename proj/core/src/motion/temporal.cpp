#include "choreo/motion/temporal.hpp"

#include "choreo/common/error.hpp"

#include <string>

namespace choreo {

FeatureMatrix lowPass(const FeatureMatrix& frames, int stride) {
  const int numFrames = static_cast<int>(frames.rows());
  if (stride < 1) {
    fail(ErrorCode::InvalidArgument, "stride must be positive");
  }
  if (stride >= numFrames) {
    fail(ErrorCode::InvalidArgument, "stride too large");
  }
  if (stride == 1) {
    return frames;
  }

  FeatureMatrix out(frames.rows(), frames.cols());
  const int last = numFrames - 1;
  for (int knot = 0; knot < last; knot += stride) {
    const int next = std::min(knot + stride, last);
    out.row(knot) = frames.row(knot);
    const double span = static_cast<double>(next - knot);
    for (int f = knot + 1; f < next; ++f) {
      const double w = static_cast<double>(f - knot) / span;
      out.row(f) = (1.0 - w) * frames.row(knot) + w * frames.row(next);
    }
  }
  out.row(last) = frames.row(last);
  return out;
}

MotionSequence lowPass(const MotionSequence& sequence, int stride) {
  return MotionSequence(lowPass(sequence.frames(), stride));
}

MotionSequence slice(const MotionSequence& sequence, int startFrame, int endFrame) {
  if (startFrame < 0 || endFrame > sequence.numFrames() || startFrame >= endFrame) {
    fail(
        ErrorCode::InvalidArgument,
        "slice [" + std::to_string(startFrame) + ", " + std::to_string(endFrame) +
            ") out of range for " + std::to_string(sequence.numFrames()) + " frames");
  }
  return MotionSequence(sequence.frames().middleRows(startFrame, endFrame - startFrame));
}

MotionSequence concat(const MotionSequence& first, const MotionSequence& second) {
  if (first.fps() != second.fps()) {
    fail(ErrorCode::InvalidArgument, "cannot concatenate sequences with different fps");
  }
  FeatureMatrix out(first.numFrames() + second.numFrames(), kFeatureDim);
  out.topRows(first.numFrames()) = first.frames();
  out.bottomRows(second.numFrames()) = second.frames();
  return MotionSequence(std::move(out));
}

MotionSequence tileToLength(const MotionSequence& sequence, int numFrames) {
  if (numFrames < 1) {
    fail(ErrorCode::InvalidArgument, "tile length must be positive");
  }
  FeatureMatrix out(numFrames, kFeatureDim);
  for (int f = 0; f < numFrames; ++f) {
    out.row(f) = sequence.frames().row(f % sequence.numFrames());
  }
  return MotionSequence(std::move(out));
}

} // namespace choreo
