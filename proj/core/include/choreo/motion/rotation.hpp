#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <span>

namespace choreo {

/// 6D layout is the first two matrix columns: [r00 r10 r20 r01 r11 r21].
using Rotation6D = Eigen::Matrix<double, 6, 1>;

/// Gram-Schmidt recovery of a rotation matrix. Degenerate inputs (vanishing
/// first column, or near-parallel columns) fall back to a fixed axis so the
/// result is always a proper rotation.
Eigen::Matrix3d rotationFrom6D(std::span<const double, 6> six);
Eigen::Matrix3d rotationFrom6D(const Rotation6D& six);

Rotation6D rotationTo6D(const Eigen::Matrix3d& rotation);

/// Writes the normalized block back in place.
void normalize6D(std::span<double, 6> six);

/// True when Gram-Schmidt on the block does not need the fallback path.
bool isNonDegenerate6D(std::span<const double, 6> six);

/// True when the two stored columns are already unit length and orthogonal.
bool isOrthonormal6D(std::span<const double, 6> six, double tolerance);

Eigen::Quaterniond quaternionFrom6D(std::span<const double, 6> six);

Rotation6D axisAngle6D(const Eigen::Vector3d& axis, double angle);

} // namespace choreo
