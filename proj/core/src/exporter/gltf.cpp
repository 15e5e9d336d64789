#include "choreo/exporter/gltf.hpp"

#include "choreo/common/base64.hpp"
#include "choreo/motion/rotation.hpp"

#include <bit>
#include <cstring>
#include <limits>

namespace choreo {

namespace {

static_assert(std::endian::native == std::endian::little, "glTF buffers are little-endian");

constexpr int kFloat = 5126;

class BufferBuilder {
 public:
  /// Appends floats as one bufferView + accessor; returns the accessor index.
  int add(const std::vector<float>& values, const char* type, int components, bool withBounds) {
    const size_t offset = bytes_.size();
    bytes_.resize(offset + values.size() * sizeof(float));
    std::memcpy(bytes_.data() + offset, values.data(), values.size() * sizeof(float));

    views_.push_back({{"buffer", 0}, {"byteOffset", offset}, {"byteLength", values.size() * sizeof(float)}});
    nlohmann::json accessor = {
        {"bufferView", views_.size() - 1},
        {"componentType", kFloat},
        {"count", values.size() / components},
        {"type", type}};
    if (withBounds) {
      std::vector<float> lo(components, std::numeric_limits<float>::max());
      std::vector<float> hi(components, std::numeric_limits<float>::lowest());
      for (size_t i = 0; i < values.size(); ++i) {
        lo[i % components] = std::min(lo[i % components], values[i]);
        hi[i % components] = std::max(hi[i % components], values[i]);
      }
      accessor["min"] = lo;
      accessor["max"] = hi;
    }
    accessors_.push_back(std::move(accessor));
    return static_cast<int>(accessors_.size() - 1);
  }

  void finish(nlohmann::json& doc) const {
    doc["buffers"] = nlohmann::json::array(
        {{{"byteLength", bytes_.size()},
          {"uri", "data:application/octet-stream;base64," + base64Encode(bytes_)}}});
    doc["bufferViews"] = views_;
    doc["accessors"] = accessors_;
  }

 private:
  std::vector<std::uint8_t> bytes_;
  nlohmann::json views_ = nlohmann::json::array();
  nlohmann::json accessors_ = nlohmann::json::array();
};

} // namespace

nlohmann::json gltfDocument(const MotionSequence& sequence, const Skeleton& skeleton, std::string_view name) {
  const int frames = sequence.numFrames();
  const FeatureMatrix& x = sequence.frames();

  nlohmann::json nodes = nlohmann::json::array();
  for (int j = 0; j < kNumJoints; ++j) {
    const Eigen::Vector3d offset = j == 0 ? Eigen::Vector3d(x.row(0).head<3>().transpose())
                                          : skeleton.restOffsets[j];
    nlohmann::json node = {{"name", skeleton.jointNames[j]}, {"translation", {offset.x(), offset.y(), offset.z()}}};
    nlohmann::json children = nlohmann::json::array();
    for (int c = j + 1; c < kNumJoints; ++c) {
      if (skeleton.parents[c] == j) {
        children.push_back(c);
      }
    }
    if (!children.empty()) {
      node["children"] = std::move(children);
    }
    nodes.push_back(std::move(node));
  }

  BufferBuilder buffer;
  std::vector<float> times(frames);
  for (int f = 0; f < frames; ++f) {
    times[f] = static_cast<float>(static_cast<double>(f) / kFps);
  }
  const int timeAccessor = buffer.add(times, "SCALAR", 1, true);

  nlohmann::json samplers = nlohmann::json::array();
  nlohmann::json channels = nlohmann::json::array();
  const auto addChannel = [&](int output, int node, const char* path) {
    samplers.push_back({{"input", timeAccessor}, {"output", output}, {"interpolation", "LINEAR"}});
    channels.push_back({{"sampler", samplers.size() - 1}, {"target", {{"node", node}, {"path", path}}}});
  };

  for (int j = 0; j < kNumJoints; ++j) {
    std::vector<float> quats;
    quats.reserve(static_cast<size_t>(frames) * 4);
    Eigen::Quaterniond previous = Eigen::Quaterniond::Identity();
    for (int f = 0; f < frames; ++f) {
      Eigen::Quaterniond q =
          quaternionFrom6D(std::span<const double, 6>(sequence.frame(f).data() + rotationOffset(j), 6));
      q.normalize();
      // Keep consecutive keys in the same hemisphere so LINEAR takes the short path.
      if (f > 0 && q.dot(previous) < 0.0) {
        q.coeffs() = -q.coeffs();
      }
      previous = q;
      for (double c : {q.x(), q.y(), q.z(), q.w()}) {
        quats.push_back(static_cast<float>(c));
      }
    }
    addChannel(buffer.add(quats, "VEC4", 4, false), j, "rotation");
  }

  std::vector<float> root;
  root.reserve(static_cast<size_t>(frames) * 3);
  for (int f = 0; f < frames; ++f) {
    for (int c = 0; c < 3; ++c) {
      root.push_back(static_cast<float>(x(f, c)));
    }
  }
  addChannel(buffer.add(root, "VEC3", 3, false), 0, "translation");

  nlohmann::json doc = {
      {"asset", {{"version", "2.0"}, {"generator", "choreo"}}},
      {"scene", 0},
      {"scenes", {{{"name", std::string(name)}, {"nodes", {0}}}}},
      {"nodes", std::move(nodes)},
      {"animations", {{{"name", std::string(name)}, {"samplers", std::move(samplers)}, {"channels", std::move(channels)}}}}};
  buffer.finish(doc);
  return doc;
}

std::string exportGltf(const MotionSequence& sequence, const Skeleton& skeleton, std::string_view name) {
  return gltfDocument(sequence, skeleton, name).dump(2) + "\n";
}

} // namespace choreo
