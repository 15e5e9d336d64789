#include "choreo/model/normalizer.hpp"

#include "choreo/common/error.hpp"

#include <cmath>

namespace choreo {

FeatureNormalizer FeatureNormalizer::identity(int features) {
  return {Eigen::RowVectorXd::Zero(features), Eigen::RowVectorXd::Ones(features)};
}

FeatureNormalizer FeatureNormalizer::fit(std::span<const FeatureMatrix> clips, double scaleFloor) {
  if (clips.empty() || !(scaleFloor > 0.0)) {
    fail(ErrorCode::InvalidArgument, "normalizer needs at least one clip and a positive floor");
  }
  const auto width = clips.front().cols();
  Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(width);
  double rows = 0.0;
  for (const auto& c : clips) {
    if (c.cols() != width) {
      fail(ErrorCode::InvalidArgument, "normalizer clips disagree on feature width");
    }
    sum += c.colwise().sum();
    rows += static_cast<double>(c.rows());
  }
  const Eigen::RowVectorXd mean = sum / rows;
  Eigen::RowVectorXd sq = Eigen::RowVectorXd::Zero(width);
  for (const auto& c : clips) {
    sq += (c.rowwise() - mean).array().square().matrix().colwise().sum();
  }
  const Eigen::RowVectorXd scale = (sq / rows).array().sqrt().max(scaleFloor).matrix();
  return {mean, scale};
}

RowMatrix FeatureNormalizer::normalize(const RowMatrix& raw) const {
  if (raw.cols() != mean.size()) {
    fail(ErrorCode::InvalidArgument, "normalizer width mismatch");
  }
  return ((raw.rowwise() - mean).array().rowwise() / scale.array()).matrix();
}

RowMatrix FeatureNormalizer::denormalize(const RowMatrix& normalized) const {
  if (normalized.cols() != mean.size()) {
    fail(ErrorCode::InvalidArgument, "normalizer width mismatch");
  }
  return ((normalized.array().rowwise() * scale.array()).rowwise() + mean.array()).matrix();
}

} // namespace choreo
