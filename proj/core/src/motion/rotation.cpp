#include "choreo/motion/rotation.hpp"

#include <cmath>

namespace choreo {

namespace {

constexpr double kDegenerateNorm = 1e-8;

// Axis least aligned with v; used to rebuild a column that collapsed.
Eigen::Vector3d fallbackAxis(const Eigen::Vector3d& v) {
  const Eigen::Vector3d a = v.cwiseAbs();
  if (a.x() <= a.y() && a.x() <= a.z()) {
    return Eigen::Vector3d::UnitX();
  }
  if (a.y() <= a.z()) {
    return Eigen::Vector3d::UnitY();
  }
  return Eigen::Vector3d::UnitZ();
}

} // namespace

Eigen::Matrix3d rotationFrom6D(std::span<const double, 6> six) {
  Eigen::Vector3d a1(six[0], six[1], six[2]);
  Eigen::Vector3d a2(six[3], six[4], six[5]);

  double n1 = a1.norm();
  if (!(n1 > kDegenerateNorm)) {
    a1 = Eigen::Vector3d::UnitX();
    n1 = 1.0;
  }
  const Eigen::Vector3d b1 = a1 / n1;
  Eigen::Vector3d u2 = a2 - b1.dot(a2) * b1;
  double n2 = u2.norm();
  if (!(n2 > kDegenerateNorm)) {
    const Eigen::Vector3d axis = fallbackAxis(b1);
    u2 = axis - b1.dot(axis) * b1;
    n2 = u2.norm();
  }
  const Eigen::Vector3d b2 = u2 / n2;
  Eigen::Matrix3d r;
  r.col(0) = b1;
  r.col(1) = b2;
  r.col(2) = b1.cross(b2);
  return r;
}

Eigen::Matrix3d rotationFrom6D(const Rotation6D& six) {
  return rotationFrom6D(std::span<const double, 6>(six.data(), 6));
}

Rotation6D rotationTo6D(const Eigen::Matrix3d& rotation) {
  Rotation6D out;
  out << rotation(0, 0), rotation(1, 0), rotation(2, 0), rotation(0, 1), rotation(1, 1),
      rotation(2, 1);
  return out;
}

void normalize6D(std::span<double, 6> six) {
  const Rotation6D n = rotationTo6D(rotationFrom6D(std::span<const double, 6>(six)));
  for (int i = 0; i < 6; ++i) {
    six[i] = n[i];
  }
}

bool isNonDegenerate6D(std::span<const double, 6> six) {
  const Eigen::Vector3d a1(six[0], six[1], six[2]);
  const Eigen::Vector3d a2(six[3], six[4], six[5]);
  const double n1 = a1.norm();
  if (!(n1 > kDegenerateNorm)) {
    return false;
  }
  const Eigen::Vector3d b1 = a1 / n1;
  return (a2 - b1.dot(a2) * b1).norm() > kDegenerateNorm;
}

bool isOrthonormal6D(std::span<const double, 6> six, double tolerance) {
  const Eigen::Vector3d a1(six[0], six[1], six[2]);
  const Eigen::Vector3d a2(six[3], six[4], six[5]);
  return std::abs(a1.norm() - 1.0) <= tolerance && std::abs(a2.norm() - 1.0) <= tolerance &&
      std::abs(a1.dot(a2)) <= tolerance;
}

Eigen::Quaterniond quaternionFrom6D(std::span<const double, 6> six) {
  Eigen::Quaterniond q(rotationFrom6D(six));
  q.normalize();
  return q;
}

Rotation6D axisAngle6D(const Eigen::Vector3d& axis, double angle) {
  return rotationTo6D(Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix());
}

} // namespace choreo
