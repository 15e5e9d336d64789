#pragma once

#include "choreo/diffusion/schedule.hpp"
#include "choreo/motion/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <random>

namespace choreo {

using Condition = Eigen::VectorXd;

/// Predicts the clean sample x0 from (x_t, t, condition). An empty
/// condition vector requests the unconditional prediction.
class Denoiser {
 public:
  virtual ~Denoiser() = default;
  virtual FeatureMatrix predict(const FeatureMatrix& noisy, int step, const Condition& condition)
      const = 0;
};

/// Entries marked known are held to the reference during sampling.
struct ObservationMask {
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> known;
  FeatureMatrix reference;

  static ObservationMask none(int rows, int cols);
};

inline constexpr double kDefaultGuidanceScale = 2.5;

struct SamplerConfig {
  double guidanceScale = kDefaultGuidanceScale;
  std::uint64_t seed = 0;
  /// Zero means "use the schedule's step count"; otherwise must match it.
  int steps = 0;
};

/// Raised when the denoiser produces a non-finite prediction.
class SamplingError : public std::runtime_error {
 public:
  SamplingError(int step, double maxMagnitude);

  int step() const noexcept {
    return step_;
  }
  double maxMagnitude() const noexcept {
    return maxMagnitude_;
  }

 private:
  int step_;
  double maxMagnitude_;
};

/// x_t = sqrt(alpha_bar_t) x0 + sqrt(1 - alpha_bar_t) noise.
FeatureMatrix qSample(
    const FeatureMatrix& clean,
    int step,
    const FeatureMatrix& noise,
    const NoiseSchedule& schedule);

FeatureMatrix standardNormal(int rows, int cols, std::mt19937_64& rng);

/// Ancestral DDPM sampling from pure noise with classifier-free guidance.
/// With a mask, known entries are replaced by a freshly noised reference
/// after every step and by the exact reference after the last one.
FeatureMatrix sampleLoop(
    const Denoiser& denoiser,
    const Condition& condition,
    int rows,
    int cols,
    const std::optional<ObservationMask>& mask,
    const SamplerConfig& config,
    const NoiseSchedule& schedule);

} // namespace choreo
