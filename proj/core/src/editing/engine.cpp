#include "choreo/editing/engine.hpp"

#include "choreo/common/error.hpp"
#include "choreo/model/denoiser.hpp"

#include <cmath>
#include <sstream>

namespace choreo {

FeatureMatrix styleTransferRaw(const FeatureMatrix& source, const FeatureMatrix& reference, int stride) {
  if (source.rows() != reference.rows() || source.cols() != reference.cols()) {
    fail(ErrorCode::InvalidArgument, "style reference must match the source length");
  }
  return source - lowPass(source, stride) + lowPass(reference, stride);
}

MotionSequence styleTransfer(const MotionSequence& source, const MotionSequence& reference, int stride) {
  return MotionSequence::fromRaw(styleTransferRaw(source.frames(), reference.frames(), stride));
}

Engine::Engine(
    Model model,
    NoiseSchedule schedule,
    StyleLibrary styles,
    EngineConfig config,
    const Skeleton& skeleton)
    : model_(std::move(model)),
      schedule_(std::move(schedule)),
      styles_(std::move(styles)),
      config_(config),
      skeleton_(skeleton) {
  schedule_.validate();
  skeleton_.validate();
  if (model_.denoiser.shape().features != kFeatureDim) {
    fail(ErrorCode::IncompatibleFormat, "model feature width does not match the skeleton");
  }
  if (config_.lowPassStride < 1 || config_.guidanceScale < 0.0) {
    fail(ErrorCode::InvalidArgument, "invalid engine configuration");
  }
}

FeatureMatrix Engine::sample(
    std::string_view prompt,
    int frames,
    const std::optional<ObservationMask>& mask,
    std::uint64_t seed) const {
  SamplerConfig cfg;
  cfg.seed = seed;
  Condition cond;
  if (prompt.empty()) {
    cfg.guidanceScale = 0.0;
  } else {
    cond = model_.encoder.encode(prompt);
    cfg.guidanceScale = config_.guidanceScale;
  }
  const NetworkDenoiser denoiser(model_.denoiser);
  if (!mask) {
    return model_.normalizer.denormalize(
        sampleLoop(denoiser, cond, frames, kFeatureDim, std::nullopt, cfg, schedule_));
  }
  ObservationMask normalized{mask->known, model_.normalizer.normalize(mask->reference)};
  const FeatureMatrix raw = model_.normalizer.denormalize(
      sampleLoop(denoiser, cond, frames, kFeatureDim, normalized, cfg, schedule_));
  // Undo the normalize/denormalize rounding on held entries.
  return mask->known.select(mask->reference, raw);
}

std::vector<MotionSequence> Engine::generateVariants(
    std::string_view prompt,
    double durationSeconds,
    std::uint64_t seed,
    int count) const {
  if (!(durationSeconds >= kMinGenerationSeconds && durationSeconds <= kMaxGenerationSeconds)) {
    std::ostringstream os;
    os << "duration cap exceeded: " << durationSeconds << " s outside [" << kMinGenerationSeconds
       << ", " << kMaxGenerationSeconds << "]";
    fail(ErrorCode::InvalidArgument, os.str());
  }
  if (count < 1) {
    fail(ErrorCode::InvalidArgument, "variant count must be positive");
  }
  // Validates the prompt before any sampling work.
  model_.encoder.tokenIndices(prompt);
  const int frames = framesForSeconds(durationSeconds);
  std::vector<MotionSequence> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back(MotionSequence::fromRaw(sample(prompt, frames, std::nullopt, seed + i)));
  }
  return out;
}

MotionSequence Engine::extend(
    const MotionSequence& sequence,
    double seconds,
    std::string_view prompt,
    std::uint64_t seed) const {
  if (!(seconds > 0.0 && seconds <= kMaxExtensionSeconds)) {
    fail(ErrorCode::InvalidArgument, "extension length must lie in (0, 5] seconds");
  }
  const int added = std::max(1, framesForSeconds(seconds));
  if (sequence.numFrames() + added > kMaxFrames) {
    fail(ErrorCode::InvalidArgument, "extension would exceed the 60 s sequence cap");
  }
  const int context = std::min(sequence.numFrames(), kExtensionContextFrames);
  const int window = context + added;

  ObservationMask mask = ObservationMask::none(window, kFeatureDim);
  mask.known.topRows(context).setConstant(true);
  mask.reference.topRows(context) = sequence.frames().bottomRows(context);
  const FeatureMatrix sampled = sample(prompt, window, mask, seed);

  FeatureMatrix out(sequence.numFrames() + added, kFeatureDim);
  out.topRows(sequence.numFrames()) = sequence.frames();
  out.bottomRows(added) = sampled.bottomRows(added);
  normalizeRotations(out, sequence.numFrames(), added);
  return MotionSequence(std::move(out));
}

MotionSequence Engine::styleTransfer(const MotionSequence& sequence, Style style) const {
  return choreo::styleTransfer(
      sequence, styles_.referenceFor(style, sequence.numFrames()), config_.lowPassStride);
}

MotionSequence Engine::partialBodyEdit(
    const MotionSequence& sequence,
    BodyPart part,
    std::string_view prompt,
    std::uint64_t seed) const {
  if (TextEncoder::tokenize(prompt).empty()) {
    fail(ErrorCode::InvalidArgument, "partial-body edit needs a prompt");
  }
  const BodyPartMask bodyMask = makeBodyPartMask(skeleton_, part);
  const int frames = sequence.numFrames();
  ObservationMask mask;
  mask.known.resize(frames, kFeatureDim);
  for (int c = 0; c < kFeatureDim; ++c) {
    mask.known.col(c).setConstant(bodyMask.featureMask[c]);
  }
  mask.reference = sequence.frames();
  FeatureMatrix out = sample(prompt, frames, mask, seed);
  normalizeJointRotations(out, bodyMask.jointIndices);
  return MotionSequence(std::move(out));
}

MotionSequence Engine::blend(
    const MotionSequence& first,
    const MotionSequence& second,
    std::uint64_t seed) const {
  if (first.numFrames() < kBlendContextFrames || second.numFrames() < kBlendContextFrames) {
    fail(ErrorCode::InvalidArgument, "sequence too short to blend (needs at least 40 frames)");
  }
  const int total = first.numFrames() + kBlendBridgeFrames + second.numFrames();
  if (total > kMaxFrames) {
    fail(ErrorCode::InvalidArgument, "blend would exceed the 60 s sequence cap");
  }
  const int window = 2 * kBlendContextFrames + kBlendBridgeFrames;
  ObservationMask mask = ObservationMask::none(window, kFeatureDim);
  mask.known.topRows(kBlendContextFrames).setConstant(true);
  mask.known.bottomRows(kBlendContextFrames).setConstant(true);
  mask.reference.topRows(kBlendContextFrames) = first.frames().bottomRows(kBlendContextFrames);
  mask.reference.bottomRows(kBlendContextFrames) = second.frames().topRows(kBlendContextFrames);
  const FeatureMatrix sampled = sample("", window, mask, seed);

  FeatureMatrix out(total, kFeatureDim);
  out.topRows(first.numFrames()) = first.frames();
  out.middleRows(first.numFrames(), kBlendBridgeFrames) =
      sampled.middleRows(kBlendContextFrames, kBlendBridgeFrames);
  out.bottomRows(second.numFrames()) = second.frames();
  normalizeRotations(out, first.numFrames(), kBlendBridgeFrames);
  return MotionSequence(std::move(out));
}

} // namespace choreo
