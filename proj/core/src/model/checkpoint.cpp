#include "choreo/model/checkpoint.hpp"

#include "choreo/common/error.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

namespace choreo {

namespace fs = std::filesystem;
using nlohmann::json;

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace {

constexpr int kSidecarVersion = 1;

void writeU32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t readU32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) {
    fail(ErrorCode::IncompatibleFormat, "checkpoint truncated in shape table");
  }
  return v;
}

json shapeToJson(const DenoiserShape& s) {
  return {
      {"features", s.features},
      {"hidden", s.hidden},
      {"blocks", s.blocks},
      {"condition", s.condition},
      {"kernel", s.kernel}};
}

DenoiserShape shapeFromJson(const json& j) {
  DenoiserShape s;
  s.features = j.at("features").get<int>();
  s.hidden = j.at("hidden").get<int>();
  s.blocks = j.at("blocks").get<int>();
  s.condition = j.at("condition").get<int>();
  s.kernel = j.at("kernel").get<int>();
  return s;
}

} // namespace

fs::path checkpointSidecar(const fs::path& path) {
  fs::path sidecar = path;
  sidecar += ".json";
  return sidecar;
}

void saveCheckpoint(const fs::path& path, const Model& model, const json& metadata) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    fail(ErrorCode::Io, "cannot open checkpoint for writing: " + path.string());
  }
  std::array<char, kCheckpointMagicSize> magic{};
  std::memcpy(magic.data(), kCheckpointMagic.data(), kCheckpointMagic.size());
  os.write(magic.data(), magic.size());

  const auto& tensors = model.denoiser.tensors();
  writeU32(os, static_cast<std::uint32_t>(tensors.size() + 3));
  writeU32(os, static_cast<std::uint32_t>(model.encoder.embedding().rows()));
  writeU32(os, static_cast<std::uint32_t>(model.encoder.embedding().cols()));
  for (const auto& t : tensors) {
    writeU32(os, static_cast<std::uint32_t>(t.rows));
    writeU32(os, static_cast<std::uint32_t>(t.cols));
  }
  for (int i = 0; i < 2; ++i) {
    writeU32(os, 1);
    writeU32(os, static_cast<std::uint32_t>(model.normalizer.mean.size()));
  }
  const auto writeFloats = [&](const double* data, size_t count) {
    for (size_t i = 0; i < count; ++i) {
      const float f = static_cast<float>(data[i]);
      os.write(reinterpret_cast<const char*>(&f), sizeof f);
    }
  };
  writeFloats(model.encoder.embedding().data(), model.encoder.embedding().size());
  writeFloats(model.denoiser.values().data(), model.denoiser.values().size());
  writeFloats(model.normalizer.mean.data(), model.normalizer.mean.size());
  writeFloats(model.normalizer.scale.data(), model.normalizer.scale.size());
  if (!os) {
    fail(ErrorCode::Io, "failed writing checkpoint " + path.string());
  }

  json side;
  side["format_version"] = kSidecarVersion;
  side["vocabulary"] = model.encoder.vocabulary();
  side["shape"] = shapeToJson(model.denoiser.shape());
  side["metadata"] = metadata.is_null() ? json::object() : metadata;
  std::ofstream ss(checkpointSidecar(path), std::ios::trunc);
  ss << side.dump(2) << '\n';
  if (!ss) {
    fail(ErrorCode::Io, "failed writing checkpoint sidecar for " + path.string());
  }
}

Checkpoint loadCheckpoint(const fs::path& path) {
  std::ifstream ss(checkpointSidecar(path));
  if (!ss) {
    fail(ErrorCode::Io, "missing checkpoint sidecar " + checkpointSidecar(path).string());
  }
  json side;
  DenoiserShape shape;
  std::vector<std::string> vocabulary;
  try {
    side = json::parse(ss);
    if (side.at("format_version").get<int>() != kSidecarVersion) {
      fail(ErrorCode::IncompatibleFormat, "unsupported checkpoint sidecar version");
    }
    vocabulary = side.at("vocabulary").get<std::vector<std::string>>();
    shape = shapeFromJson(side.at("shape"));
  } catch (const json::exception& e) {
    fail(ErrorCode::IncompatibleFormat, std::string("malformed checkpoint sidecar: ") + e.what());
  }

  std::ifstream is(path, std::ios::binary);
  if (!is) {
    fail(ErrorCode::Io, "cannot open checkpoint " + path.string());
  }
  std::array<char, kCheckpointMagicSize> magic{};
  is.read(magic.data(), magic.size());
  std::array<char, kCheckpointMagicSize> expected{};
  std::memcpy(expected.data(), kCheckpointMagic.data(), kCheckpointMagic.size());
  if (!is || magic != expected) {
    fail(ErrorCode::IncompatibleFormat, "not a checkpoint file (bad magic): " + path.string());
  }

  DenoiserParams params(shape);
  const auto& tensors = params.tensors();
  const std::uint32_t count = readU32(is);
  if (count != tensors.size() + 3) {
    fail(ErrorCode::IncompatibleFormat, "checkpoint tensor count does not match its shape");
  }
  const std::uint32_t embRows = readU32(is);
  const std::uint32_t embCols = readU32(is);
  if (embRows != vocabulary.size() || embCols != static_cast<std::uint32_t>(shape.condition)) {
    fail(ErrorCode::IncompatibleFormat, "checkpoint embedding table does not match vocabulary");
  }
  for (const auto& t : tensors) {
    const std::uint32_t rows = readU32(is);
    const std::uint32_t cols = readU32(is);
    if (rows != static_cast<std::uint32_t>(t.rows) || cols != static_cast<std::uint32_t>(t.cols)) {
      fail(ErrorCode::IncompatibleFormat, "checkpoint tensor " + t.name + " has the wrong shape");
    }
  }
  for (int i = 0; i < 2; ++i) {
    if (readU32(is) != 1 || readU32(is) != static_cast<std::uint32_t>(shape.features)) {
      fail(ErrorCode::IncompatibleFormat, "checkpoint normalizer has the wrong shape");
    }
  }
  const auto readFloats = [&](double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) {
      float f = 0.0f;
      is.read(reinterpret_cast<char*>(&f), sizeof f);
      out[i] = static_cast<double>(f);
    }
    if (!is) {
      fail(ErrorCode::IncompatibleFormat, "checkpoint payload truncated");
    }
  };
  RowMatrix embedding(embRows, embCols);
  readFloats(embedding.data(), embedding.size());
  readFloats(params.values().data(), params.values().size());
  FeatureNormalizer normalizer{
      Eigen::RowVectorXd(shape.features), Eigen::RowVectorXd(shape.features)};
  readFloats(normalizer.mean.data(), normalizer.mean.size());
  readFloats(normalizer.scale.data(), normalizer.scale.size());
  if (is.peek() != std::char_traits<char>::eof()) {
    fail(ErrorCode::IncompatibleFormat, "checkpoint has trailing bytes");
  }
  if (!params.allFinite() || !embedding.allFinite() || !normalizer.mean.allFinite() ||
      !(normalizer.scale.array() > 0.0).all()) {
    fail(ErrorCode::IncompatibleFormat, "checkpoint contains non-finite parameters");
  }

  return Checkpoint{
      Model{
          TextEncoder(std::move(vocabulary), std::move(embedding)),
          std::move(params),
          std::move(normalizer)},
      side.value("metadata", json::object())};
}

} // namespace choreo
