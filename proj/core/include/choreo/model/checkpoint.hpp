#pragma once

#include "choreo/model/trainer.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string_view>

namespace choreo {

inline constexpr std::string_view kCheckpointMagic = "DGEN-CKPT-v1";
inline constexpr size_t kCheckpointMagicSize = 16;

struct Checkpoint {
  Model model;
  /// Free-form sidecar fields (train config, diffusion steps, ...).
  nlohmann::json metadata;
};

/// Binary file: 16-byte zero-padded magic, little-endian u32 tensor count,
/// then (rows, cols) u32 pairs, then the float32 payload: embedding table,
/// the denoiser tensors in layout order, normalizer mean, normalizer scale. The sidecar
/// `<path>.json` carries format_version, vocabulary, shape, and metadata.
void saveCheckpoint(const std::filesystem::path& path, const Model& model, const nlohmann::json& metadata = {});

Checkpoint loadCheckpoint(const std::filesystem::path& path);

std::filesystem::path checkpointSidecar(const std::filesystem::path& path);

} // namespace choreo
