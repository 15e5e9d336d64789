#include "choreo/exporter/render.hpp"

#include "choreo/common/error.hpp"
#include "choreo/motion/kinematics.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <fstream>

namespace choreo {

namespace {

constexpr std::uint8_t kBackground = 255;
constexpr std::uint8_t kInk = 0;

// Snaps to a 1/1024-px grid so rounding noise (e.g. from translating the
// root) cannot flip a pixel when a point sits exactly on a pixel boundary.
double snap(double v) {
  return std::round(v * 1024.0) / 1024.0;
}

// Stamps a kBoneWidth-square brush whose top-left is the pixel containing
// (x - 0.5, y - 0.5), so the stroke is centred on the continuous point.
void stamp(GrayImage& image, double x, double y) {
  const int x0 = static_cast<int>(std::floor(snap(x) - 0.5));
  const int y0 = static_cast<int>(std::floor(snap(y) - 0.5));
  for (int dy = 0; dy < kBoneWidth; ++dy) {
    for (int dx = 0; dx < kBoneWidth; ++dx) {
      const int px = x0 + dx;
      const int py = y0 + dy;
      if (px >= 0 && py >= 0 && px < image.width && py < image.height) {
        image.pixels[static_cast<size_t>(py) * image.width + px] = kInk;
      }
    }
  }
}

void drawSegment(GrayImage& image, Eigen::Vector2d a, Eigen::Vector2d b) {
  a = a.unaryExpr(&snap);
  b = b.unaryExpr(&snap);
  const double length = (b - a).lpNorm<Eigen::Infinity>();
  const int steps = std::max(1, static_cast<int>(std::ceil(length * 2.0)));
  for (int i = 0; i <= steps; ++i) {
    const Eigen::Vector2d p = a + (b - a) * (static_cast<double>(i) / steps);
    stamp(image, p.x(), p.y());
  }
}

void appendBytes(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void noFlush(png_structp) {}

} // namespace

Eigen::Vector2d projectToPixel(const Eigen::Vector3d& world) {
  const double half = kRenderSize / 2.0;
  return {half + kPixelsPerMeter * world.x(), half - kPixelsPerMeter * (world.y() - kCameraCenterY)};
}

GrayImage rasterizeFrame(const Skeleton& skeleton, std::span<const double> frame) {
  const JointPositions joints = forwardKinematics(skeleton, frame);
  GrayImage image{kRenderSize, kRenderSize, std::vector<std::uint8_t>(kRenderSize * kRenderSize, kBackground)};
  for (int j = 1; j < kNumJoints; ++j) {
    const int parent = skeleton.parents[j];
    drawSegment(
        image,
        projectToPixel(joints.row(parent).transpose()),
        projectToPixel(joints.row(j).transpose()));
  }
  return image;
}

std::vector<std::uint8_t> encodePng(const GrayImage& image) {
  if (image.width < 1 || image.height < 1 ||
      image.pixels.size() != static_cast<size_t>(image.width) * image.height) {
    fail(ErrorCode::InvalidArgument, "image buffer does not match its dimensions");
  }
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(ErrorCode::Io, "cannot initialize PNG encoder");
  }
  std::vector<std::uint8_t> out;
  std::vector<png_bytep> rows(image.height);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorCode::Io, "PNG encoding failed");
  }
  png_set_write_fn(png, &out, appendBytes, noFlush);
  png_set_IHDR(
      png, info, image.width, image.height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
      PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 9);
  for (int y = 0; y < image.height; ++y) {
    rows[y] = const_cast<png_bytep>(image.pixels.data() + static_cast<size_t>(y) * image.width);
  }
  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

std::vector<std::uint8_t> renderFramePng(const Skeleton& skeleton, std::span<const double> frame) {
  return encodePng(rasterizeFrame(skeleton, frame));
}

FrameExport exportFrames(const MotionSequence& sequence, int everyK, const Skeleton& skeleton) {
  if (everyK < 1) {
    fail(ErrorCode::InvalidArgument, "every_k must be at least 1");
  }
  FrameExport out;
  nlohmann::json list = nlohmann::json::array();
  for (int f = 0; f < sequence.numFrames(); f += everyK) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05d.png", f);
    out.frames.push_back({name, f, renderFramePng(skeleton, sequence.frame(f))});
    list.push_back({{"file", name}, {"frame_index", f}, {"time_s", static_cast<double>(f) / kFps}});
  }
  out.manifest = {
      {"fps", kFps},
      {"every_k", everyK},
      {"source_frames", sequence.numFrames()},
      {"width", kRenderSize},
      {"height", kRenderSize},
      {"frames", std::move(list)}};
  return out;
}

void writeFrameExport(const FrameExport& exported, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  const auto write = [&](const std::filesystem::path& path, const char* data, size_t size) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file.write(data, static_cast<std::streamsize>(size));
    if (!file) {
      fail(ErrorCode::Io, "cannot write " + path.string());
    }
  };
  for (const auto& frame : exported.frames) {
    write(directory / frame.fileName, reinterpret_cast<const char*>(frame.png.data()), frame.png.size());
  }
  const std::string manifest = exported.manifest.dump(2) + "\n";
  write(directory / "manifest.json", manifest.data(), manifest.size());
}

} // namespace choreo
