#pragma once

#include "choreo/model/corpus.hpp"
#include "choreo/motion/motion_sequence.hpp"

#include <cstdint>
#include <map>

namespace choreo {

/// One reference sequence y per style; its low-frequency content is what a
/// style transfer imposes.
class StyleLibrary {
 public:
  explicit StyleLibrary(std::map<Style, MotionSequence> references);

  /// References synthesized from the corpus style modulations.
  static StyleLibrary procedural(int numFrames = 200, std::uint64_t seed = 0);

  const MotionSequence& reference(Style style) const;

  /// Reference tiled or trimmed to exactly numFrames.
  MotionSequence referenceFor(Style style, int numFrames) const;

  const std::map<Style, MotionSequence>& references() const {
    return references_;
  }

 private:
  std::map<Style, MotionSequence> references_;
};

} // namespace choreo
