#include "choreo/model/text_encoder.hpp"

#include "choreo/common/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>

namespace choreo {

TextEncoder::TextEncoder(std::vector<std::string> vocabulary, RowMatrix embedding)
    : vocabulary_(std::move(vocabulary)), embedding_(std::move(embedding)) {
  if (vocabulary_.empty() || vocabulary_[kOovIndex] != kOovToken) {
    fail(ErrorCode::InvalidArgument, "vocabulary must start with the OOV token");
  }
  if (embedding_.rows() != static_cast<Eigen::Index>(vocabulary_.size()) || embedding_.cols() < 1) {
    fail(ErrorCode::InvalidArgument, "embedding table does not match the vocabulary");
  }
  for (size_t i = 0; i < vocabulary_.size(); ++i) {
    if (!index_.emplace(vocabulary_[i], static_cast<int>(i)).second) {
      fail(ErrorCode::InvalidArgument, "duplicate vocabulary token " + vocabulary_[i]);
    }
  }
}

TextEncoder TextEncoder::fromLabels(std::span<const std::string> labels, int dim, std::uint64_t seed) {
  if (dim < 1) {
    fail(ErrorCode::InvalidArgument, "embedding dimension must be positive");
  }
  std::set<std::string> tokens;
  for (const auto& label : labels) {
    for (auto& token : tokenize(label)) {
      tokens.insert(std::move(token));
    }
  }
  std::vector<std::string> vocab;
  vocab.emplace_back(kOovToken);
  vocab.insert(vocab.end(), tokens.begin(), tokens.end());

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RowMatrix table(static_cast<Eigen::Index>(vocab.size()), dim);
  for (Eigen::Index i = 0; i < table.size(); ++i) {
    table.data()[i] = normal(rng);
  }
  return TextEncoder(std::move(vocab), std::move(table));
}

std::vector<std::string> TextEncoder::tokenize(std::string_view prompt) {
  std::vector<std::string> out;
  std::string current;
  for (const char raw : prompt) {
    const auto c = static_cast<unsigned char>(raw);
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (std::isspace(c)) {
      if (!current.empty()) {
        out.push_back(std::move(current));
        current.clear();
      }
    }
    // Punctuation is dropped without splitting, so "left-arm" -> "leftarm".
  }
  if (!current.empty()) {
    out.push_back(std::move(current));
  }
  return out;
}

std::vector<int> TextEncoder::tokenIndices(std::string_view prompt) const {
  const auto tokens = tokenize(prompt);
  if (tokens.empty()) {
    fail(ErrorCode::InvalidArgument, "prompt must contain at least one word");
  }
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    const auto it = index_.find(token);
    out.push_back(it == index_.end() ? kOovIndex : it->second);
  }
  return out;
}

Eigen::VectorXd TextEncoder::encode(std::string_view prompt) const {
  return encodeIndices(tokenIndices(prompt));
}

Eigen::VectorXd TextEncoder::encodeIndices(std::span<const int> indices) const {
  if (indices.empty()) {
    fail(ErrorCode::InvalidArgument, "cannot encode an empty token list");
  }
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim());
  for (const int i : indices) {
    sum += embedding_.row(i).transpose();
  }
  return sum / static_cast<double>(indices.size());
}

} // namespace choreo
