#pragma once

#include "choreo/motion/motion_sequence.hpp"
#include "choreo/motion/skeleton.hpp"

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace choreo {

// Fixed front orthographic camera: world x maps to image right, world y to
// image up, z is dropped. World (0, kCameraCenterY) lands on the image centre.
inline constexpr int kRenderSize = 512;
inline constexpr double kPixelsPerMeter = 250.0;
inline constexpr double kCameraCenterY = 0.8;
inline constexpr int kBoneWidth = 2;

/// Continuous pixel coordinates (x right, y down) of a world point.
Eigen::Vector2d projectToPixel(const Eigen::Vector3d& world);

/// 8-bit grayscale, row-major, 255 = background.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int x, int y) const {
    return pixels[static_cast<size_t>(y) * width + x];
  }
};

/// Bones as 2-px segments between FK joint positions.
GrayImage rasterizeFrame(const Skeleton& skeleton, std::span<const double> frame);

std::vector<std::uint8_t> encodePng(const GrayImage& image);

/// rasterizeFrame() + encodePng(). Identical input gives identical bytes.
std::vector<std::uint8_t> renderFramePng(const Skeleton& skeleton, std::span<const double> frame);

struct RenderedFrame {
  std::string fileName;
  int frameIndex = 0;
  std::vector<std::uint8_t> png;
};

/// Frame-sequence stand-in for video: every k-th frame plus a manifest.
struct FrameExport {
  std::vector<RenderedFrame> frames;
  nlohmann::json manifest;
};

FrameExport exportFrames(const MotionSequence& sequence, int everyK, const Skeleton& skeleton);

/// Writes the PNGs and manifest.json into `directory` (created if missing).
void writeFrameExport(const FrameExport& exported, const std::filesystem::path& directory);

} // namespace choreo
