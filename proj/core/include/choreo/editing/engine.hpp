#pragma once

#include "choreo/diffusion/sampler.hpp"
#include "choreo/diffusion/schedule.hpp"
#include "choreo/editing/edit_command.hpp"
#include "choreo/editing/style_library.hpp"
#include "choreo/model/trainer.hpp"
#include "choreo/motion/motion_sequence.hpp"
#include "choreo/motion/skeleton.hpp"
#include "choreo/motion/temporal.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace choreo {

inline constexpr int kDefaultVariantCount = 3;
inline constexpr double kMinGenerationSeconds = 0.5;
inline constexpr double kMaxGenerationSeconds = 10.0;
inline constexpr int kExtensionContextFrames = 100;
inline constexpr int kBlendContextFrames = 40;
inline constexpr int kBlendBridgeFrames = 100;

struct EngineConfig {
  double guidanceScale = kDefaultGuidanceScale;
  int lowPassStride = kDefaultLowPassStride;
};

/// x - lowPass(x) + lowPass(y), before rotation renormalization. x and y
/// must have the same length.
FeatureMatrix styleTransferRaw(const FeatureMatrix& source, const FeatureMatrix& reference, int stride);

/// styleTransferRaw() followed by 6D renormalization.
MotionSequence styleTransfer(const MotionSequence& source, const MotionSequence& reference, int stride);

/// The generation and editing operations over one trained model. Every
/// method is const and safe to call concurrently.
class Engine {
 public:
  Engine(
      Model model,
      NoiseSchedule schedule,
      StyleLibrary styles,
      EngineConfig config = {},
      const Skeleton& skeleton = defaultSkeleton());

  /// `count` samples with seeds seed, seed+1, ...; each round(duration*20) frames.
  std::vector<MotionSequence> generateVariants(
      std::string_view prompt,
      double durationSeconds,
      std::uint64_t seed,
      int count = kDefaultVariantCount) const;

  /// Appends round(seconds*20) frames. The input is kept bit-for-bit; the
  /// sampler sees the last min(F, 100) input frames as known context. An
  /// empty prompt samples unconditionally.
  MotionSequence extend(
      const MotionSequence& sequence,
      double seconds,
      std::string_view prompt,
      std::uint64_t seed) const;

  MotionSequence styleTransfer(const MotionSequence& sequence, Style style) const;

  /// Regenerates only the part's joints (and the root for lower_body).
  MotionSequence partialBodyEdit(
      const MotionSequence& sequence,
      BodyPart part,
      std::string_view prompt,
      std::uint64_t seed) const;

  /// A ++ bridge(100 frames) ++ B, the bridge sampled against the last 40
  /// frames of A and the first 40 frames of B.
  MotionSequence blend(const MotionSequence& first, const MotionSequence& second, std::uint64_t seed)
      const;

  const Model& model() const {
    return model_;
  }
  const NoiseSchedule& schedule() const {
    return schedule_;
  }
  const StyleLibrary& styles() const {
    return styles_;
  }
  const Skeleton& skeleton() const {
    return skeleton_;
  }
  const EngineConfig& config() const {
    return config_;
  }

 private:
  FeatureMatrix sample(
      std::string_view prompt,
      int frames,
      const std::optional<ObservationMask>& mask,
      std::uint64_t seed) const;

  Model model_;
  NoiseSchedule schedule_;
  StyleLibrary styles_;
  EngineConfig config_;
  Skeleton skeleton_;
};

} // namespace choreo
