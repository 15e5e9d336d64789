#pragma once

#include "choreo/motion/skeleton.hpp"

#include <Eigen/Core>

#include <span>

namespace choreo {

using JointPositions = Eigen::Matrix<double, kNumJoints, 3, Eigen::RowMajor>;

/// World joint positions for one feature row. The root sits at its
/// translation; each child is placed at parent + R_world(parent) * offset.
JointPositions forwardKinematics(const Skeleton& skeleton, std::span<const double> frame);

} // namespace choreo
