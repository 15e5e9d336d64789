#pragma once

#include "choreo/diffusion/sampler.hpp"
#include "choreo/motion/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace choreo {

struct DenoiserShape {
  int features = kFeatureDim;
  int hidden = 128;
  int blocks = 4;
  int condition = 64;
  int kernel = 5;

  bool operator==(const DenoiserShape&) const = default;
};

/// Flat parameter storage for the residual temporal-convolution denoiser.
///
/// Layout, in order: input projection (D x H) and bias, timestep projection
/// (H x H), condition projection (E x H); per block, `kernel` convolution
/// taps (H x H each) and bias, then the mixing projection (H x H) and bias;
/// finally the output projection (H x D) and bias. Block b's taps are spaced
/// 2^b frames apart.
class DenoiserParams {
 public:
  using Map = Eigen::Map<RowMatrix>;
  using ConstMap = Eigen::Map<const RowMatrix>;

  struct TensorInfo {
    std::string name;
    int rows;
    int cols;
    size_t offset;
  };

  explicit DenoiserParams(const DenoiserShape& shape = {});

  /// Scaled Gaussian initialization.
  static DenoiserParams initialized(const DenoiserShape& shape, std::uint64_t seed);

  const DenoiserShape& shape() const {
    return shape_;
  }
  const std::vector<TensorInfo>& tensors() const {
    return layout_;
  }
  std::span<double> values() {
    return values_;
  }
  std::span<const double> values() const {
    return values_;
  }

  Map tensor(size_t index);
  ConstMap tensor(size_t index) const;

  size_t inputWeight() const {
    return 0;
  }
  size_t inputBias() const {
    return 1;
  }
  size_t timeWeight() const {
    return 2;
  }
  size_t conditionWeight() const {
    return 3;
  }
  size_t convTap(int block, int tap) const;
  size_t convBias(int block) const;
  size_t mixWeight(int block) const;
  size_t mixBias(int block) const;
  size_t outputWeight() const;
  size_t outputBias() const;

  void setZero();
  bool allFinite() const;

 private:
  DenoiserShape shape_;
  std::vector<TensorInfo> layout_;
  std::vector<double> values_;
};

/// Intermediate activations kept for the backward pass.
struct DenoiserActivations {
  std::vector<RowMatrix> blockInputs; // h_k entering block k, plus the final h
  std::vector<RowMatrix> blockTanh;   // tanh(conv(h_k))
};

/// Sinusoidal embedding of a scalar position (timestep or frame index).
Eigen::VectorXd sinusoidalEmbedding(double position, int dim);

/// x0 prediction. An empty condition contributes nothing (unconditional).
RowMatrix denoiserForward(
    const DenoiserParams& params,
    const RowMatrix& noisy,
    int step,
    const Eigen::VectorXd& condition,
    DenoiserActivations* activations = nullptr);

/// Accumulates d(loss)/d(params) into `gradient` given d(loss)/d(output).
/// Returns d(loss)/d(condition) (empty for an empty condition).
Eigen::VectorXd denoiserBackward(
    const DenoiserParams& params,
    const RowMatrix& noisy,
    int step,
    const Eigen::VectorXd& condition,
    const DenoiserActivations& activations,
    const RowMatrix& outputGradient,
    DenoiserParams& gradient);

/// Adapts trained parameters to the sampler's Denoiser interface.
class NetworkDenoiser final : public Denoiser {
 public:
  explicit NetworkDenoiser(const DenoiserParams& params) : params_(params) {}

  FeatureMatrix predict(const FeatureMatrix& noisy, int step, const Condition& condition)
      const override;

 private:
  const DenoiserParams& params_;
};

} // namespace choreo
