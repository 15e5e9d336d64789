#pragma once

#include "choreo/motion/types.hpp"

#include <Eigen/Core>

#include <span>

namespace choreo {

inline constexpr double kDefaultScaleFloor = 0.05;

/// Per-feature affine map into the space the diffusion runs in:
/// normalized = (raw - mean) / scale.
struct FeatureNormalizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  static FeatureNormalizer identity(int features);

  /// Mean and standard deviation over every frame of every clip, with the
  /// deviation floored so constant features do not blow up.
  static FeatureNormalizer fit(std::span<const FeatureMatrix> clips, double scaleFloor = kDefaultScaleFloor);

  RowMatrix normalize(const RowMatrix& raw) const;
  RowMatrix denormalize(const RowMatrix& normalized) const;
};

} // namespace choreo
