#include "choreo/model/denoiser.hpp"

#include "choreo/common/error.hpp"

#include <cmath>
#include <random>

namespace choreo {

DenoiserParams::DenoiserParams(const DenoiserShape& shape) : shape_(shape) {
  if (shape.features < 1 || shape.hidden < 2 || shape.blocks < 0 || shape.condition < 1 ||
      shape.kernel < 1 || shape.kernel % 2 == 0) {
    fail(ErrorCode::InvalidArgument, "invalid denoiser shape");
  }
  size_t offset = 0;
  const auto add = [&](std::string name, int rows, int cols) {
    layout_.push_back({std::move(name), rows, cols, offset});
    offset += static_cast<size_t>(rows) * cols;
  };
  const int d = shape.features;
  const int h = shape.hidden;
  add("input_weight", d, h);
  add("input_bias", 1, h);
  add("time_weight", h, h);
  add("condition_weight", shape.condition, h);
  for (int b = 0; b < shape.blocks; ++b) {
    const std::string prefix = "block" + std::to_string(b) + ".";
    for (int k = 0; k < shape.kernel; ++k) {
      add(prefix + "conv_tap" + std::to_string(k), h, h);
    }
    add(prefix + "conv_bias", 1, h);
    add(prefix + "mix_weight", h, h);
    add(prefix + "mix_bias", 1, h);
  }
  add("output_weight", h, d);
  add("output_bias", 1, d);
  values_.assign(offset, 0.0);
}

DenoiserParams DenoiserParams::initialized(const DenoiserShape& shape, std::uint64_t seed) {
  DenoiserParams p(shape);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto fill = [&](size_t index, double scale) {
    auto t = p.tensor(index);
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      t.data()[i] = scale * normal(rng);
    }
  };
  const double h = shape.hidden;
  fill(p.inputWeight(), 1.0 / std::sqrt(static_cast<double>(shape.features)));
  fill(p.timeWeight(), 1.0 / std::sqrt(h));
  fill(p.conditionWeight(), 1.0 / std::sqrt(static_cast<double>(shape.condition)));
  for (int b = 0; b < shape.blocks; ++b) {
    for (int k = 0; k < shape.kernel; ++k) {
      fill(p.convTap(b, k), 1.0 / std::sqrt(h * shape.kernel));
    }
    fill(p.mixWeight(b), 0.5 / std::sqrt(h));
  }
  fill(p.outputWeight(), 0.1 / std::sqrt(h));
  return p;
}

DenoiserParams::Map DenoiserParams::tensor(size_t index) {
  const auto& t = layout_.at(index);
  return Map(values_.data() + t.offset, t.rows, t.cols);
}

DenoiserParams::ConstMap DenoiserParams::tensor(size_t index) const {
  const auto& t = layout_.at(index);
  return ConstMap(values_.data() + t.offset, t.rows, t.cols);
}

size_t DenoiserParams::convTap(int block, int tap) const {
  return 4 + static_cast<size_t>(block) * (shape_.kernel + 3) + tap;
}
size_t DenoiserParams::convBias(int block) const {
  return convTap(block, shape_.kernel);
}
size_t DenoiserParams::mixWeight(int block) const {
  return convBias(block) + 1;
}
size_t DenoiserParams::mixBias(int block) const {
  return convBias(block) + 2;
}
size_t DenoiserParams::outputWeight() const {
  return 4 + static_cast<size_t>(shape_.blocks) * (shape_.kernel + 3);
}
size_t DenoiserParams::outputBias() const {
  return outputWeight() + 1;
}

void DenoiserParams::setZero() {
  std::fill(values_.begin(), values_.end(), 0.0);
}

bool DenoiserParams::allFinite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Eigen::VectorXd sinusoidalEmbedding(double position, int dim) {
  Eigen::VectorXd out(dim);
  const int half = dim / 2;
  for (int i = 0; i < half; ++i) {
    const double freq = std::exp(-std::log(10000.0) * i / half);
    out[i] = std::sin(position * freq);
    out[half + i] = std::cos(position * freq);
  }
  if (dim % 2 == 1) {
    out[dim - 1] = 0.0;
  }
  return out;
}

namespace {

// Block b dilates its taps by 2^b, so four blocks of width 5 see ~61 frames.
int blockDilation(int block) {
  return 1 << std::min(block, 16);
}

// Same-padded dilated convolution: out[f] = bias + sum_k in[f + (k - r) d] * tap_k.
RowMatrix convolve(const DenoiserParams& p, int block, const RowMatrix& in) {
  const int frames = static_cast<int>(in.rows());
  const int radius = p.shape().kernel / 2;
  const int dilation = blockDilation(block);
  RowMatrix out = p.tensor(p.convBias(block)).replicate(frames, 1);
  for (int k = 0; k < p.shape().kernel; ++k) {
    const int shift = (k - radius) * dilation;
    const int first = std::max(0, -shift);
    const int count = frames - std::abs(shift);
    if (count <= 0) {
      continue;
    }
    out.middleRows(first, count).noalias() +=
        in.middleRows(first + shift, count) * p.tensor(p.convTap(block, k));
  }
  return out;
}

void convolveBackward(
    const DenoiserParams& p,
    int block,
    const RowMatrix& in,
    const RowMatrix& outGrad,
    RowMatrix& inGrad,
    DenoiserParams& grad) {
  const int frames = static_cast<int>(in.rows());
  const int radius = p.shape().kernel / 2;
  const int dilation = blockDilation(block);
  grad.tensor(grad.convBias(block)) += outGrad.colwise().sum();
  for (int k = 0; k < p.shape().kernel; ++k) {
    const int shift = (k - radius) * dilation;
    const int first = std::max(0, -shift);
    const int count = frames - std::abs(shift);
    if (count <= 0) {
      continue;
    }
    grad.tensor(grad.convTap(block, k)).noalias() +=
        in.middleRows(first + shift, count).transpose() * outGrad.middleRows(first, count);
    inGrad.middleRows(first + shift, count).noalias() +=
        outGrad.middleRows(first, count) * p.tensor(p.convTap(block, k)).transpose();
  }
}

void checkInputs(const DenoiserParams& p, const RowMatrix& noisy, const Eigen::VectorXd& condition) {
  if (noisy.cols() != p.shape().features || noisy.rows() < 1) {
    fail(ErrorCode::InvalidArgument, "denoiser input has the wrong feature width");
  }
  if (condition.size() != 0 && condition.size() != p.shape().condition) {
    fail(ErrorCode::InvalidArgument, "condition vector has the wrong length");
  }
}

} // namespace

RowMatrix denoiserForward(
    const DenoiserParams& p,
    const RowMatrix& noisy,
    int step,
    const Eigen::VectorXd& condition,
    DenoiserActivations* activations) {
  checkInputs(p, noisy, condition);
  const int frames = static_cast<int>(noisy.rows());
  const int hidden = p.shape().hidden;

  Eigen::RowVectorXd shared = p.tensor(p.inputBias());
  shared.noalias() += sinusoidalEmbedding(step, hidden).transpose() * p.tensor(p.timeWeight());
  if (condition.size() != 0) {
    shared.noalias() += condition.transpose() * p.tensor(p.conditionWeight());
  }

  RowMatrix h = noisy * p.tensor(p.inputWeight());
  for (int f = 0; f < frames; ++f) {
    h.row(f) += shared + sinusoidalEmbedding(f, hidden).transpose();
  }

  if (activations) {
    activations->blockInputs.clear();
    activations->blockTanh.clear();
  }
  for (int b = 0; b < p.shape().blocks; ++b) {
    RowMatrix a = convolve(p, b, h).array().tanh().matrix();
    RowMatrix next = h;
    next.noalias() += a * p.tensor(p.mixWeight(b));
    next.rowwise() += Eigen::RowVectorXd(p.tensor(p.mixBias(b)));
    if (activations) {
      activations->blockInputs.push_back(std::move(h));
      activations->blockTanh.push_back(std::move(a));
    }
    h = std::move(next);
  }

  RowMatrix out = h * p.tensor(p.outputWeight());
  out.rowwise() += Eigen::RowVectorXd(p.tensor(p.outputBias()));
  if (activations) {
    activations->blockInputs.push_back(std::move(h));
  }
  return out;
}

Eigen::VectorXd denoiserBackward(
    const DenoiserParams& p,
    const RowMatrix& noisy,
    int step,
    const Eigen::VectorXd& condition,
    const DenoiserActivations& activations,
    const RowMatrix& outputGradient,
    DenoiserParams& grad) {
  checkInputs(p, noisy, condition);
  const int blocks = p.shape().blocks;
  const RowMatrix& top = activations.blockInputs.at(blocks);

  grad.tensor(grad.outputWeight()).noalias() += top.transpose() * outputGradient;
  grad.tensor(grad.outputBias()) += outputGradient.colwise().sum();
  RowMatrix dh = outputGradient * p.tensor(p.outputWeight()).transpose();

  for (int b = blocks - 1; b >= 0; --b) {
    const RowMatrix& in = activations.blockInputs[b];
    const RowMatrix& a = activations.blockTanh[b];
    grad.tensor(grad.mixWeight(b)).noalias() += a.transpose() * dh;
    grad.tensor(grad.mixBias(b)) += dh.colwise().sum();
    const RowMatrix dz = ((dh * p.tensor(p.mixWeight(b)).transpose()).array() *
                          (1.0 - a.array().square()))
                             .matrix();
    RowMatrix dIn = dh;
    convolveBackward(p, b, in, dz, dIn, grad);
    dh = std::move(dIn);
  }

  grad.tensor(grad.inputWeight()).noalias() += noisy.transpose() * dh;
  const Eigen::RowVectorXd shared = dh.colwise().sum();
  grad.tensor(grad.inputBias()) += shared;
  grad.tensor(grad.timeWeight()).noalias() +=
      sinusoidalEmbedding(step, p.shape().hidden) * shared;
  if (condition.size() == 0) {
    return {};
  }
  grad.tensor(grad.conditionWeight()).noalias() += condition * shared;
  return p.tensor(p.conditionWeight()) * shared.transpose();
}

FeatureMatrix NetworkDenoiser::predict(
    const FeatureMatrix& noisy,
    int step,
    const Condition& condition) const {
  return denoiserForward(params_, noisy, step, condition);
}

} // namespace choreo
