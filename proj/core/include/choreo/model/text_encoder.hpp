#pragma once

#include "choreo/motion/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace choreo {

inline constexpr int kDefaultEmbeddingDim = 64;

/// Controlled-vocabulary prompt encoder: lowercase, strip punctuation,
/// split on whitespace, average the token embedding rows. Slot 0 is the
/// out-of-vocabulary token.
class TextEncoder {
 public:
  static constexpr int kOovIndex = 0;
  static constexpr std::string_view kOovToken = "<unk>";

  TextEncoder(std::vector<std::string> vocabulary, RowMatrix embedding);

  /// Vocabulary = OOV slot followed by every distinct label token, sorted.
  static TextEncoder fromLabels(
      std::span<const std::string> labels,
      int dim,
      std::uint64_t seed);

  static std::vector<std::string> tokenize(std::string_view prompt);

  /// Throws Error(InvalidArgument) for prompts without any token.
  std::vector<int> tokenIndices(std::string_view prompt) const;

  Eigen::VectorXd encode(std::string_view prompt) const;
  Eigen::VectorXd encodeIndices(std::span<const int> indices) const;

  const std::vector<std::string>& vocabulary() const {
    return vocabulary_;
  }
  const RowMatrix& embedding() const {
    return embedding_;
  }
  RowMatrix& embedding() {
    return embedding_;
  }
  int dim() const {
    return static_cast<int>(embedding_.cols());
  }

 private:
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, int> index_;
  RowMatrix embedding_;
};

} // namespace choreo
