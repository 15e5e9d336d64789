#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <string>
#include <vector>

namespace choreo::test {

/// Minimal glTF 2.0 animation reader, written against the format rather than
/// the exporter: embedded base64 buffers, float accessors, TRS nodes, and
/// LINEAR rotation/translation channels sampled at their keyframes.
class GltfReader {
 public:
  explicit GltfReader(const std::string& text);

  int nodeCount() const {
    return static_cast<int>(nodes_.size());
  }
  int channelCount() const {
    return channelCount_;
  }
  int keyframeCount() const {
    return static_cast<int>(times_.size());
  }
  const std::vector<float>& times() const {
    return times_;
  }
  const std::string& nodeName(int node) const {
    return nodes_.at(node).name;
  }
  int nodeParent(int node) const {
    return nodes_.at(node).parent;
  }

  /// Local rotation of a node at keyframe k (static rotation if unanimated).
  Eigen::Quaterniond rotation(int node, int keyframe) const;
  /// Local translation of a node at keyframe k.
  Eigen::Vector3d translation(int node, int keyframe) const;
  /// World position of every node at keyframe k, composed down the hierarchy.
  std::vector<Eigen::Vector3d> worldPositions(int keyframe) const;

 private:
  struct Node {
    std::string name;
    int parent = -1;
    std::vector<int> children;
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();
    Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
    std::vector<Eigen::Quaterniond> rotationKeys;
    std::vector<Eigen::Vector3d> translationKeys;
  };

  std::vector<Node> nodes_;
  std::vector<int> roots_;
  std::vector<float> times_;
  int channelCount_ = 0;
};

} // namespace choreo::test
