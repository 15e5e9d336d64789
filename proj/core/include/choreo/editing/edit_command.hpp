#pragma once

#include "choreo/model/corpus.hpp"
#include "choreo/motion/skeleton.hpp"

#include <optional>
#include <string>
#include <variant>

namespace choreo {

inline constexpr double kMaxExtensionSeconds = 5.0;

struct ExtendEdit {
  double seconds = kMaxExtensionSeconds;
  /// Conditioning prompt; unset means "reuse the sequence's own prompt".
  std::optional<std::string> prompt;
};

struct StyleEdit {
  Style style;
};

struct PartialBodyEdit {
  BodyPart part;
  std::string prompt;
};

struct BlendEdit {
  std::string otherId;
};

using EditCommand = std::variant<ExtendEdit, StyleEdit, PartialBodyEdit, BlendEdit>;

} // namespace choreo
