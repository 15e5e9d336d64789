#include "choreo/editing/style_library.hpp"

#include "choreo/common/error.hpp"
#include "choreo/motion/temporal.hpp"

#include <random>

namespace choreo {

StyleLibrary::StyleLibrary(std::map<Style, MotionSequence> references)
    : references_(std::move(references)) {
  for (const auto s : kAllStyles) {
    if (!references_.contains(s)) {
      fail(ErrorCode::InvalidArgument, "style library is missing " + std::string(styleName(s)));
    }
  }
  if (references_.size() != kAllStyles.size()) {
    fail(ErrorCode::InvalidArgument, "style library must hold exactly six styles");
  }
}

StyleLibrary StyleLibrary::procedural(int numFrames, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  std::map<Style, MotionSequence> refs;
  for (const auto s : kAllStyles) {
    MotionVariation v;
    v.phase = phase(rng);
    refs.emplace(s, synthesizeMotion(MotionFamily::TorsoBounce, s, numFrames, v));
  }
  return StyleLibrary(std::move(refs));
}

const MotionSequence& StyleLibrary::reference(Style style) const {
  return references_.at(style);
}

MotionSequence StyleLibrary::referenceFor(Style style, int numFrames) const {
  const auto& ref = reference(style);
  if (ref.numFrames() == numFrames) {
    return ref;
  }
  return tileToLength(ref, numFrames);
}

} // namespace choreo
