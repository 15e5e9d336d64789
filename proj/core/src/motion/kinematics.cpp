#include "choreo/motion/kinematics.hpp"

#include "choreo/common/error.hpp"
#include "choreo/motion/rotation.hpp"

#include <array>
#include <cmath>

namespace choreo {

JointPositions forwardKinematics(const Skeleton& skeleton, std::span<const double> frame) {
  if (frame.size() != static_cast<size_t>(kFeatureDim)) {
    fail(ErrorCode::InvalidArgument, "forward kinematics expects a 135-wide frame");
  }
  for (const double v : frame) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::InvalidArgument, "forward kinematics input is not finite");
    }
  }

  std::array<Eigen::Matrix3d, kNumJoints> world;
  JointPositions positions;
  for (int j = 0; j < kNumJoints; ++j) {
    const Eigen::Matrix3d local =
        rotationFrom6D(std::span<const double, 6>(frame.data() + rotationOffset(j), 6));
    const int parent = skeleton.parents[j];
    if (parent < 0) {
      world[j] = local;
      positions.row(j) = Eigen::Vector3d(frame[0], frame[1], frame[2]).transpose() +
          skeleton.restOffsets[j].transpose();
    } else {
      world[j] = world[parent] * local;
      positions.row(j) =
          positions.row(parent) + (world[parent] * skeleton.restOffsets[j]).transpose();
    }
  }
  return positions;
}

} // namespace choreo
