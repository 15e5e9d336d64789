#include "choreo/diffusion/sampler.hpp"

#include "choreo/common/error.hpp"

#include <boost/random/normal_distribution.hpp>

#include <cmath>
#include <sstream>

namespace choreo {

namespace {

std::string samplingMessage(int step, double maxMagnitude) {
  std::ostringstream os;
  os << "denoiser produced non-finite output at step " << step
     << " (max finite magnitude " << maxMagnitude << ")";
  return os.str();
}

double maxFiniteMagnitude(const FeatureMatrix& m) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double v = std::abs(m.data()[i]);
    if (std::isfinite(v)) {
      out = std::max(out, v);
    }
  }
  return out;
}

void overwriteKnown(FeatureMatrix& target, const ObservationMask& mask, const FeatureMatrix& values) {
  target = mask.known.select(values, target);
}

} // namespace

SamplingError::SamplingError(int step, double maxMagnitude)
    : std::runtime_error(samplingMessage(step, maxMagnitude)),
      step_(step),
      maxMagnitude_(maxMagnitude) {}

ObservationMask ObservationMask::none(int rows, int cols) {
  ObservationMask mask;
  mask.known.setConstant(rows, cols, false);
  mask.reference = FeatureMatrix::Zero(rows, cols);
  return mask;
}

FeatureMatrix qSample(
    const FeatureMatrix& clean,
    int step,
    const FeatureMatrix& noise,
    const NoiseSchedule& schedule) {
  if (clean.rows() != noise.rows() || clean.cols() != noise.cols()) {
    fail(ErrorCode::InvalidArgument, "q_sample shape mismatch");
  }
  if (step < 1 || step > schedule.steps) {
    fail(ErrorCode::InvalidArgument, "diffusion step out of range");
  }
  const double ab = schedule.alphaBar[step];
  return std::sqrt(ab) * clean + std::sqrt(1.0 - ab) * noise;
}

FeatureMatrix standardNormal(int rows, int cols, std::mt19937_64& rng) {
  // Ziggurat: noticeably cheaper than libstdc++'s polar method, which dominates a sampling step.
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  FeatureMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out.data()[i] = normal(rng);
  }
  return out;
}

FeatureMatrix sampleLoop(
    const Denoiser& denoiser,
    const Condition& condition,
    int rows,
    int cols,
    const std::optional<ObservationMask>& mask,
    const SamplerConfig& config,
    const NoiseSchedule& schedule) {
  if (config.guidanceScale < 0.0 || !std::isfinite(config.guidanceScale)) {
    fail(ErrorCode::InvalidArgument, "guidance scale must be non-negative");
  }
  if (config.steps != 0 && config.steps != schedule.steps) {
    fail(ErrorCode::InvalidArgument, "sampler steps do not match the noise schedule");
  }
  if (mask) {
    if (mask->known.rows() != rows || mask->known.cols() != cols ||
        mask->reference.rows() != rows || mask->reference.cols() != cols) {
      fail(ErrorCode::InvalidArgument, "observation mask shape mismatch");
    }
    if (!mask->known.select(mask->reference, FeatureMatrix::Zero(rows, cols)).allFinite()) {
      fail(ErrorCode::InvalidArgument, "observation reference must be finite");
    }
  }

  const int T = schedule.steps;
  std::mt19937_64 rng(config.seed);
  FeatureMatrix x = standardNormal(rows, cols, rng);
  if (mask) {
    overwriteKnown(x, *mask, qSample(mask->reference, T, standardNormal(rows, cols, rng), schedule));
  }

  const Condition unconditional;
  const double s = config.guidanceScale;
  const auto predict = [&](const FeatureMatrix& noisy, int t) {
    FeatureMatrix x0;
    if (s == 0.0) {
      x0 = denoiser.predict(noisy, t, unconditional);
    } else if (s == 1.0) {
      x0 = denoiser.predict(noisy, t, condition);
    } else {
      const FeatureMatrix uncond = denoiser.predict(noisy, t, unconditional);
      const FeatureMatrix cond = denoiser.predict(noisy, t, condition);
      x0 = uncond + s * (cond - uncond);
    }
    if (!x0.allFinite()) {
      throw SamplingError(t, maxFiniteMagnitude(x0));
    }
    return x0;
  };

  for (int t = T; t >= 1; --t) {
    const FeatureMatrix x0 = predict(x, t);
    const double abPrev = schedule.alphaBar[t - 1];
    const double ab = schedule.alphaBar[t];
    const double beta = schedule.beta[t];
    const double meanClean = std::sqrt(abPrev) * beta / (1.0 - ab);
    const double meanNoisy = std::sqrt(schedule.alpha[t]) * (1.0 - abPrev) / (1.0 - ab);
    FeatureMatrix next = meanClean * x0 + meanNoisy * x;
    if (t > 1) {
      const double variance = beta * (1.0 - abPrev) / (1.0 - ab);
      next += std::sqrt(variance) * standardNormal(rows, cols, rng);
    }
    x = std::move(next);

    if (mask) {
      if (t > 1) {
        overwriteKnown(
            x, *mask, qSample(mask->reference, t - 1, standardNormal(rows, cols, rng), schedule));
      } else {
        overwriteKnown(x, *mask, mask->reference);
      }
    }
  }
  return x;
}

} // namespace choreo
