#pragma once

#include "choreo/common/error.hpp"
#include "choreo/diffusion/schedule.hpp"
#include "choreo/model/corpus.hpp"
#include "choreo/model/denoiser.hpp"
#include "choreo/model/normalizer.hpp"
#include "choreo/model/text_encoder.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace choreo {

/// Text encoder, denoiser, and feature normalizer: everything a checkpoint
/// stores. The denoiser works in normalized feature space.
struct Model {
  TextEncoder encoder;
  DenoiserParams denoiser;
  FeatureNormalizer normalizer;
};

/// Fresh model whose vocabulary covers the whole corpus grammar, with an
/// identity normalizer.
Model initialModel(const DenoiserShape& shape, std::uint64_t seed);

/// Same, with the normalizer fitted to the corpus.
Model initialModel(const DenoiserShape& shape, std::uint64_t seed, std::span<const CorpusItem> corpus);

struct ModelGradient {
  DenoiserParams denoiser;
  RowMatrix embedding;
};

struct TrainingExample {
  std::vector<int> tokens;
  FeatureMatrix clean;
};

std::vector<TrainingExample> makeExamples(const Model& model, std::span<const CorpusItem> corpus);

/// Mean over the batch of the per-element MSE between the x0 prediction and
/// x0, with t ~ U{1..T}, Gaussian noise, and condition dropout all drawn from
/// `seed` in a fixed order. Everything happens in normalized feature space.
double trainingLoss(
    const Model& model,
    std::span<const TrainingExample> batch,
    const NoiseSchedule& schedule,
    std::uint64_t seed,
    double conditionDropout);

/// Analytic gradient of trainingLoss() under the same random draws.
ModelGradient lossGradient(
    const Model& model,
    std::span<const TrainingExample> batch,
    const NoiseSchedule& schedule,
    std::uint64_t seed,
    double conditionDropout,
    double* loss = nullptr);

struct TrainConfig {
  double learningRate = 5e-5;
  int batchSize = 16;
  int epochs = 50;
  double conditionDropout = 0.1;
  double momentum = 0.9;
  std::uint64_t seed = 0;
  /// Stop after this many optimizer steps (0 = run every epoch).
  int maxSteps = 0;
  /// Global gradient-norm clip (0 = off).
  double gradientClip = 0.0;
  bool freezeEmbedding = false;

  void validate() const;
};

struct TrainResult {
  Model model;
  std::vector<double> lossHistory; // one entry per optimizer step
};

inline constexpr double kDivergenceLoss = 1e3;

/// Raised when a step's loss exceeds kDivergenceLoss or turns non-finite.
class TrainingDiverged : public Error {
 public:
  TrainingDiverged(int step, std::vector<double> history);

  int step() const noexcept {
    return step_;
  }
  const std::vector<double>& history() const noexcept {
    return history_;
  }

 private:
  int step_;
  std::vector<double> history_;
};

using TrainProgress = std::function<void(int step, int epoch, double loss)>;

/// Minibatch gradient descent with momentum.
TrainResult train(
    std::span<const CorpusItem> corpus,
    Model initial,
    const TrainConfig& config,
    const NoiseSchedule& schedule,
    const TrainProgress& progress = {});

/// Stage 1 on the whole corpus with a trainable embedding, then stage 2 on
/// the styled subset with the embedding table frozen.
TrainResult trainTwoStage(
    std::span<const CorpusItem> corpus,
    Model initial,
    const TrainConfig& pretrain,
    const TrainConfig& finetune,
    const NoiseSchedule& schedule,
    const TrainProgress& progress = {});

} // namespace choreo
