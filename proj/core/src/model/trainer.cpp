#include "choreo/model/trainer.hpp"

#include "choreo/diffusion/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace choreo {

Model initialModel(const DenoiserShape& shape, std::uint64_t seed) {
  const auto labels = grammarLabels();
  return Model{
      TextEncoder::fromLabels(labels, shape.condition, seed ^ 0x5eedc0deULL),
      DenoiserParams::initialized(shape, seed),
      FeatureNormalizer::identity(shape.features)};
}

Model initialModel(const DenoiserShape& shape, std::uint64_t seed, std::span<const CorpusItem> corpus) {
  Model model = initialModel(shape, seed);
  std::vector<FeatureMatrix> clips;
  clips.reserve(corpus.size());
  for (const auto& item : corpus) {
    clips.push_back(item.motion.frames());
  }
  model.normalizer = FeatureNormalizer::fit(clips);
  return model;
}

std::vector<TrainingExample> makeExamples(const Model& model, std::span<const CorpusItem> corpus) {
  std::vector<TrainingExample> out;
  out.reserve(corpus.size());
  for (const auto& item : corpus) {
    out.push_back({model.encoder.tokenIndices(item.label), item.motion.frames()});
  }
  return out;
}

namespace {

struct Draw {
  int step;
  bool dropped;
  FeatureMatrix noise;
};

std::vector<Draw> drawBatch(
    std::span<const TrainingExample> batch,
    const NoiseSchedule& schedule,
    std::uint64_t seed,
    double conditionDropout) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> step(1, schedule.steps);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Draw> out;
  out.reserve(batch.size());
  for (const auto& ex : batch) {
    Draw d;
    d.step = step(rng);
    d.dropped = unit(rng) < conditionDropout;
    d.noise = standardNormal(static_cast<int>(ex.clean.rows()), static_cast<int>(ex.clean.cols()), rng);
    out.push_back(std::move(d));
  }
  return out;
}

void checkBatch(std::span<const TrainingExample> batch) {
  if (batch.empty()) {
    fail(ErrorCode::InvalidArgument, "training batch is empty");
  }
  for (const auto& ex : batch) {
    if (!ex.clean.allFinite()) {
      fail(ErrorCode::InvalidArgument, "training batch contains non-finite values");
    }
  }
}

} // namespace

double trainingLoss(
    const Model& model,
    std::span<const TrainingExample> batch,
    const NoiseSchedule& schedule,
    std::uint64_t seed,
    double conditionDropout) {
  checkBatch(batch);
  const auto draws = drawBatch(batch, schedule, seed, conditionDropout);
  double total = 0.0;
  for (size_t i = 0; i < batch.size(); ++i) {
    const auto& ex = batch[i];
    const auto& d = draws[i];
    const FeatureMatrix clean = model.normalizer.normalize(ex.clean);
    const FeatureMatrix noisy = qSample(clean, d.step, d.noise, schedule);
    const Eigen::VectorXd cond =
        d.dropped ? Eigen::VectorXd() : model.encoder.encodeIndices(ex.tokens);
    const RowMatrix pred = denoiserForward(model.denoiser, noisy, d.step, cond);
    if (!pred.allFinite()) {
      fail(ErrorCode::NumericalFailure, "denoiser forward pass produced non-finite values");
    }
    total += (pred - clean).squaredNorm() / static_cast<double>(clean.size());
  }
  return total / static_cast<double>(batch.size());
}

ModelGradient lossGradient(
    const Model& model,
    std::span<const TrainingExample> batch,
    const NoiseSchedule& schedule,
    std::uint64_t seed,
    double conditionDropout,
    double* loss) {
  checkBatch(batch);
  const auto draws = drawBatch(batch, schedule, seed, conditionDropout);
  ModelGradient grad{
      DenoiserParams(model.denoiser.shape()),
      RowMatrix::Zero(model.encoder.embedding().rows(), model.encoder.embedding().cols())};
  const double batchScale = 1.0 / static_cast<double>(batch.size());
  double total = 0.0;
  DenoiserActivations acts;
  for (size_t i = 0; i < batch.size(); ++i) {
    const auto& ex = batch[i];
    const auto& d = draws[i];
    const FeatureMatrix clean = model.normalizer.normalize(ex.clean);
    const FeatureMatrix noisy = qSample(clean, d.step, d.noise, schedule);
    const Eigen::VectorXd cond =
        d.dropped ? Eigen::VectorXd() : model.encoder.encodeIndices(ex.tokens);
    const RowMatrix pred = denoiserForward(model.denoiser, noisy, d.step, cond, &acts);
    if (!pred.allFinite()) {
      fail(ErrorCode::NumericalFailure, "denoiser forward pass produced non-finite values");
    }
    const RowMatrix diff = pred - clean;
    const double elements = static_cast<double>(clean.size());
    total += diff.squaredNorm() / elements;
    const RowMatrix outGrad = (2.0 * batchScale / elements) * diff;
    const Eigen::VectorXd condGrad =
        denoiserBackward(model.denoiser, noisy, d.step, cond, acts, outGrad, grad.denoiser);
    if (condGrad.size() != 0) {
      const double share = 1.0 / static_cast<double>(ex.tokens.size());
      for (const int token : ex.tokens) {
        grad.embedding.row(token) += share * condGrad.transpose();
      }
    }
  }
  if (loss) {
    *loss = total * batchScale;
  }
  return grad;
}

void TrainConfig::validate() const {
  if (!(learningRate > 0.0) || batchSize < 1 || epochs < 1 || maxSteps < 0) {
    fail(ErrorCode::InvalidArgument, "training hyperparameters must be positive");
  }
  if (!(conditionDropout >= 0.0 && conditionDropout < 1.0)) {
    fail(ErrorCode::InvalidArgument, "condition dropout must lie in [0, 1)");
  }
  if (!(momentum >= 0.0 && momentum < 1.0) || gradientClip < 0.0) {
    fail(ErrorCode::InvalidArgument, "momentum must lie in [0, 1)");
  }
}

namespace {

std::string divergedMessage(int step) {
  std::ostringstream os;
  os << "training diverged at step " << step << " (loss above " << kDivergenceLoss << ")";
  return os.str();
}

} // namespace

TrainingDiverged::TrainingDiverged(int step, std::vector<double> history)
    : Error(ErrorCode::NumericalFailure, divergedMessage(step)),
      step_(step),
      history_(std::move(history)) {}

TrainResult train(
    std::span<const CorpusItem> corpus,
    Model initial,
    const TrainConfig& config,
    const NoiseSchedule& schedule,
    const TrainProgress& progress) {
  config.validate();
  if (corpus.empty()) {
    fail(ErrorCode::InvalidArgument, "training corpus is empty");
  }
  TrainResult result{std::move(initial), {}};
  Model& model = result.model;
  const auto examples = makeExamples(model, corpus);

  std::vector<double> velocity(model.denoiser.values().size(), 0.0);
  RowMatrix embeddingVelocity = RowMatrix::Zero(
      model.encoder.embedding().rows(), model.encoder.embedding().cols());

  std::mt19937_64 rng(config.seed);
  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::vector<TrainingExample> batch;

  int step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t start = 0; start < order.size(); start += config.batchSize) {
      if (config.maxSteps > 0 && step >= config.maxSteps) {
        return result;
      }
      batch.clear();
      const size_t end = std::min(order.size(), start + config.batchSize);
      for (size_t i = start; i < end; ++i) {
        batch.push_back(examples[order[i]]);
      }

      double loss = 0.0;
      const std::uint64_t stepSeed = rng();
      ModelGradient grad =
          lossGradient(model, batch, schedule, stepSeed, config.conditionDropout, &loss);
      if (!std::isfinite(loss) || loss > kDivergenceLoss) {
        result.lossHistory.push_back(loss);
        throw TrainingDiverged(step, result.lossHistory);
      }
      result.lossHistory.push_back(loss);

      double scale = 1.0;
      if (config.gradientClip > 0.0) {
        double norm2 = 0.0;
        for (const double g : grad.denoiser.values()) {
          norm2 += g * g;
        }
        if (!config.freezeEmbedding) {
          norm2 += grad.embedding.squaredNorm();
        }
        const double norm = std::sqrt(norm2);
        if (norm > config.gradientClip) {
          scale = config.gradientClip / norm;
        }
      }

      auto params = model.denoiser.values();
      const auto g = grad.denoiser.values();
      for (size_t i = 0; i < params.size(); ++i) {
        velocity[i] = config.momentum * velocity[i] + scale * g[i];
        params[i] -= config.learningRate * velocity[i];
      }
      if (!config.freezeEmbedding) {
        embeddingVelocity = config.momentum * embeddingVelocity + scale * grad.embedding;
        model.encoder.embedding() -= config.learningRate * embeddingVelocity;
      }
      if (progress) {
        progress(step, epoch, loss);
      }
      ++step;
    }
  }
  return result;
}

TrainResult trainTwoStage(
    std::span<const CorpusItem> corpus,
    Model initial,
    const TrainConfig& pretrain,
    const TrainConfig& finetune,
    const NoiseSchedule& schedule,
    const TrainProgress& progress) {
  TrainConfig stage1 = pretrain;
  stage1.freezeEmbedding = false;
  TrainResult first = train(corpus, std::move(initial), stage1, schedule, progress);

  std::vector<CorpusItem> styled;
  for (const auto& item : corpus) {
    if (item.style) {
      styled.push_back(item);
    }
  }
  if (styled.empty()) {
    return first;
  }
  TrainConfig stage2 = finetune;
  stage2.freezeEmbedding = true;
  TrainResult second = train(styled, std::move(first.model), stage2, schedule, progress);
  first.lossHistory.insert(
      first.lossHistory.end(), second.lossHistory.begin(), second.lossHistory.end());
  second.lossHistory = std::move(first.lossHistory);
  return second;
}

} // namespace choreo
